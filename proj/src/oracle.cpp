#include "heuncross/oracle.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>

namespace heuncross::oracle {

namespace odeint = boost::numeric::odeint;

namespace {

// (Re a1, Im a1, Re a2, Im a2, δ)
using State = std::array<double, 5>;

State pack(const StateVector& s) {
  return {s.a1.real(), s.a1.imag(), s.a2.real(), s.a2.imag(), s.phase};
}

StateVector unpack(const State& x) { return {{x[0], x[1]}, {x[2], x[3]}, x[4]}; }

struct Rhs {
  const Field* field;

  void operator()(const State& x, State& dxdt, double t) const {
    const double u = field->rabi(t);
    const double c = std::cos(x[4]);
    const double s = std::sin(x[4]);
    // a1' = -i U e^{-iδ} a2
    const double e2r = c * x[2] + s * x[3];
    const double e2i = c * x[3] - s * x[2];
    dxdt[0] = u * e2i;
    dxdt[1] = -u * e2r;
    // a2' = -i U e^{iδ} a1
    const double e1r = c * x[0] - s * x[1];
    const double e1i = c * x[1] + s * x[0];
    dxdt[2] = u * e1i;
    dxdt[3] = -u * e1r;
    dxdt[4] = field->detuning(t);
  }
};

// Walks a dense-output Dormand–Prince stepper toward `targets`, calling
// `record` at every target time and `on_step` after every accepted step.
template <class OnTarget, class OnStep>
void drive(const Field& field, const StateVector& state0, double t_begin,
           std::span<const double> targets, const Options& opts, OnTarget&& on_target,
           OnStep&& on_step) {
  if (!(opts.rtol >= 1e-13)) throw ParameterError("oracle: rtol below 1e-13 is not supported");
  if (targets.empty()) return;
  const double direction = targets.back() >= t_begin ? 1.0 : -1.0;

  auto stepper = odeint::make_dense_output(opts.atol, opts.rtol, odeint::runge_kutta_dopri5<State>());
  Rhs rhs{&field};
  stepper.initialize(pack(state0), t_begin, direction * opts.initial_step);

  std::size_t steps = 0;
  State x{};
  try {
    for (const double target : targets) {
      if (direction * (target - t_begin) < 0.0) {
        throw ParameterError("oracle: requested times must lie ahead of the start time");
      }
      while (direction * (target - stepper.current_time()) > 0.0) {
        stepper.do_step(rhs);
        if (++steps > opts.max_steps) throw NumericalError("oracle: step limit exceeded");
        const double dt = std::abs(stepper.current_time_step());
        if (!(dt > 1e-14 * std::max(1.0, std::abs(stepper.current_time())))) {
          throw NumericalError("oracle: step size underflow");
        }
        on_step(stepper.current_time(), stepper.current_state());
      }
      if (target == t_begin) {
        x = pack(state0);
      } else {
        stepper.calc_state(target, x);
      }
      on_target(target, x);
    }
  } catch (const odeint::odeint_error& e) {
    throw NumericalError(std::string("oracle: integration failed: ") + e.what());
  }
}

}  // namespace

Field make_field(const fields::FieldConfig& cfg) {
  cfg.validate();
  const double u0 = cfg.u0;
  return {[u0](double) { return u0; }, [cfg](double t) { return fields::detuning_general(cfg, t); }};
}

Field make_field(const fields::N2Config& cfg) {
  cfg.validate();
  const double u0 = cfg.u0;
  return {[u0](double) { return u0; }, [cfg](double t) { return fields::detuning_n2(cfg, t); }};
}

Field make_n3_field(double u0, double delta1, Branch branch) {
  fields::detuning_n3(u0, delta1, branch, 0.0);  // domain check up front
  return {[u0](double) { return u0; },
          [u0, delta1, branch](double t) { return fields::detuning_n3(u0, delta1, branch, t); }};
}

Trajectory integrate(const Field& field, const StateVector& state0, double t_begin, double t_end,
                     const Options& opts) {
  Trajectory traj;
  const double n0 = state0.norm();
  traj.times.push_back(t_begin);
  traj.states.push_back(state0);
  const std::array<double, 1> target{t_end};
  drive(
      field, state0, t_begin, target, opts,
      [&](double t, const State& x) {
        const StateVector s = unpack(x);
        traj.norm_drift = std::max(traj.norm_drift, std::abs(s.norm() - n0));
        if (traj.times.back() != t) {
          traj.times.push_back(t);
          traj.states.push_back(s);
        } else {
          traj.states.back() = s;
        }
      },
      [&](double t, const State& x) {
        const double direction = t_end >= t_begin ? 1.0 : -1.0;
        if (direction * (t_end - t) <= 0.0) return;  // the overshooting step is replaced by t_end
        const StateVector s = unpack(x);
        traj.norm_drift = std::max(traj.norm_drift, std::abs(s.norm() - n0));
        traj.times.push_back(t);
        traj.states.push_back(s);
      });
  return traj;
}

Trajectory integrate_at(const Field& field, const StateVector& state0, double t_begin,
                        std::span<const double> times, const Options& opts) {
  Trajectory traj;
  const double n0 = state0.norm();
  traj.times.reserve(times.size());
  traj.states.reserve(times.size());
  drive(
      field, state0, t_begin, times, opts,
      [&](double t, const State& x) {
        const StateVector s = unpack(x);
        traj.norm_drift = std::max(traj.norm_drift, std::abs(s.norm() - n0));
        traj.times.push_back(t);
        traj.states.push_back(s);
      },
      [&](double, const State& x) {
        traj.norm_drift = std::max(traj.norm_drift, std::abs(unpack(x).norm() - n0));
      });
  return traj;
}

double wrap_exponent(double x, double drive) { return x - drive * std::floor(x / drive + 0.5); }

double exponent_distance(double x, double y, double drive) {
  return std::abs(wrap_exponent(x - y, drive));
}

Monodromy monodromy(const Field& field, double t_ref, double period, const Options& opts) {
  if (!(period > 0.0)) throw ParameterError("monodromy: period must be positive");
  const double drive = kTwoPi / period;
  Monodromy out;
  const std::array<StateVector, 2> basis{StateVector{{1.0, 0.0}, {0.0, 0.0}, 0.0},
                                         StateVector{{0.0, 0.0}, {1.0, 0.0}, 0.0}};
  for (int col = 0; col < 2; ++col) {
    const Trajectory traj = integrate(field, basis[col], t_ref, t_ref + period, opts);
    const StateVector& end = traj.states.back();
    out.matrix[0][col] = end.a1 * std::polar(1.0, end.phase);
    out.matrix[1][col] = end.a2;
  }
  const auto& m = out.matrix;
  const cplx half_trace = 0.5 * (m[0][0] + m[1][1]);
  const cplx det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const cplx disc = std::sqrt(half_trace * half_trace - det);
  out.eigenvalues = {half_trace + disc, half_trace - disc};
  for (int k = 0; k < 2; ++k) {
    out.exponents[k] = wrap_exponent(std::arg(out.eigenvalues[k]) / period, drive);
    out.unit_circle_deviation =
        std::max(out.unit_circle_deviation, std::abs(std::abs(out.eigenvalues[k]) - 1.0));
  }
  return out;
}

double mean_detuning(const Field& field, double period, double t_ref) {
  if (!(period > 0.0)) throw ParameterError("mean_detuning: period must be positive");
  return fields::integrate_detuning(field.detuning, t_ref, t_ref + period) / period;
}

}  // namespace heuncross::oracle
