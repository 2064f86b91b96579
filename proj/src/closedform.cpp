#include "heuncross/closedform.hpp"

#include <cmath>

namespace heuncross::closedform {

namespace {

const cplx kI{0.0, 1.0};

UnwoundPoint as_unwound(cplx z) {
  if (z == cplx(0.0)) throw DomainError("closed form: z = 0 has no defined power");
  return UnwoundPoint(std::abs(z), std::arg(z));
}

void require_model(double delta1, double u0) {
  if (!(std::abs(delta1) > 1.0)) throw ParameterError("N=2 model requires |delta1| > 1");
  if (!(u0 > 0.0)) throw ParameterError("N=2 model requires u0 > 0");
}

}  // namespace

double generalized_rabi(double u0, double delta1) { return std::sqrt(4.0 * u0 * u0 + delta1 * delta1); }

double generalized_rabi(const N2Config& cfg) {
  return generalized_rabi(cfg.scaled_u0(), cfg.scaled_delta1());
}

std::array<cplx, 3> three_beta_coefficients(double delta1, double u0, Branch branch) {
  require_model(delta1, u0);
  const double r = sign_of(branch) * generalized_rabi(u0, delta1);
  return {1.0, 2.0 * delta1 * (1.0 - r) / ((delta1 + 1.0) * r),
          (delta1 - 1.0) * (r - 1.0) / ((delta1 + 1.0) * (r + 1.0))};
}

cplx hg_three_beta(double delta1, double u0, const UnwoundPoint& z, Branch branch) {
  const auto coeffs = three_beta_coefficients(delta1, u0, branch);
  const double r = sign_of(branch) * generalized_rabi(u0, delta1);
  const auto fold = specfun::fold_beta_sum(r, -1.0, coeffs, z);
  return specfun::fold_value(fold, -1.0, z);
}

cplx hg_three_beta(double delta1, double u0, cplx z, Branch branch) {
  return hg_three_beta(delta1, u0, as_unwound(z), branch);
}

cplx hg_quasipoly(double delta1, double u0, const UnwoundPoint& z, Branch branch) {
  require_model(delta1, u0);
  const double r = sign_of(branch) * generalized_rabi(u0, delta1);
  const cplx w = z.value();
  if (w == cplx(1.0)) throw DomainError("hg_quasipoly: singular at z = 1");
  const cplx bracket = (w - 1.0) * (1.0 + r * delta1) - (w + 1.0) * (r + delta1);
  return specfun::unwound_power(z, r) * bracket / (r * (r + 1.0) * (delta1 + 1.0) * (w - 1.0));
}

cplx hg_quasipoly(double delta1, double u0, cplx z, Branch branch) {
  return hg_quasipoly(delta1, u0, as_unwound(z), branch);
}

UnwoundPoint z_of_t(const N2Config& cfg, double t) {
  return UnwoundPoint(std::sqrt(cfg.singular_point()), cfg.drive * (t - cfg.t0));
}

AmplitudeSample amplitude_n2(const N2Config& cfg, Branch branch, double t) {
  cfg.validate();
  const double d = cfg.scaled_delta1();
  const double r = sign_of(branch) * generalized_rabi(cfg);
  const double lambda = 0.5 * (d + r);
  const UnwoundPoint z = z_of_t(cfg, t);
  const cplx w = z.value();
  const double k0 = (r - 1.0) * (d - 1.0);
  const double k1 = 2.0 * (r + d);
  const cplx inv = 1.0 / (1.0 - w);
  const cplx bracket = k0 + k1 * inv;
  const cplx power = specfun::unwound_power(z, lambda);
  const cplx d_tau = kI * power * (lambda * bracket + w * k1 * inv * inv);
  return {power * bracket, cfg.drive * d_tau};
}

cplx amplitude_n2_beta_route(const N2Config& cfg, Branch branch, double t) {
  cfg.validate();
  const double d = cfg.scaled_delta1();
  const double r = sign_of(branch) * generalized_rabi(cfg);
  const UnwoundPoint z = z_of_t(cfg, t);
  return specfun::unwound_power(z, 0.5 * (d - r)) * hg_three_beta(d, cfg.scaled_u0(), z, branch);
}

cplx periodic_bracket(const N2Config& cfg, Branch branch, double t) {
  cfg.validate();
  const double d = cfg.scaled_delta1();
  const double r = sign_of(branch) * generalized_rabi(cfg);
  const cplx w = z_of_t(cfg, t).value();
  return (r - 1.0) * (d - 1.0) + 2.0 * (r + d) / (1.0 - w);
}

cplx recover_a1(double rabi, cplx a2_derivative, double phase) {
  if (rabi == 0.0) throw ParameterError("recover_a1: zero Rabi frequency");
  return kI * a2_derivative * std::polar(1.0, -phase) / rabi;
}

cplx recover_a1(const N2Config& cfg, cplx /*a2_value*/, cplx a2_derivative, double phase) {
  return recover_a1(cfg.u0, a2_derivative, phase);
}

MatchCoefficients match_initial(const FundamentalFn& plus, const FundamentalFn& minus, double rabi,
                                const StateVector& state0, double t_start) {
  const AmplitudeSample p = plus(t_start);
  const AmplitudeSample m = minus(t_start);
  const cplx p1 = recover_a1(rabi, p.derivative, state0.phase);
  const cplx m1 = recover_a1(rabi, m.derivative, state0.phase);

  MatchCoefficients out;
  out.wronskian = p.value * m1 - m.value * p1;
  const double scale = std::abs(p.value) * std::abs(m1) + std::abs(m.value) * std::abs(p1);
  if (!(std::abs(out.wronskian) > 1e-12 * scale)) {
    throw NumericalError("match_initial: fundamental solutions are linearly dependent");
  }
  out.plus = (state0.a2 * m1 - m.value * state0.a1) / out.wronskian;
  out.minus = (p.value * state0.a1 - state0.a2 * p1) / out.wronskian;
  return out;
}

MatchCoefficients match_initial(const N2Config& cfg, const StateVector& state0, double t_start) {
  return MatchedSolution::n2(cfg, state0, t_start).coefficients();
}

MatchedSolution::MatchedSolution(FundamentalFn plus, FundamentalFn minus, double rabi,
                                 fields::DetuningFn detuning, const StateVector& state0,
                                 double t_start)
    : plus_(std::move(plus)),
      minus_(std::move(minus)),
      rabi_(rabi),
      detuning_(std::move(detuning)),
      state0_(state0),
      t_start_(t_start),
      coeffs_(match_initial(plus_, minus_, rabi_, state0_, t_start_)) {}

MatchedSolution MatchedSolution::n2(const N2Config& cfg, const StateVector& state0, double t_start) {
  cfg.validate();
  return MatchedSolution([cfg](double t) { return amplitude_n2(cfg, Branch::plus, t); },
                         [cfg](double t) { return amplitude_n2(cfg, Branch::minus, t); }, cfg.u0,
                         [cfg](double t) { return fields::detuning_n2(cfg, t); }, state0, t_start);
}

AmplitudeSample MatchedSolution::a2(double t) const {
  const AmplitudeSample p = plus_(t);
  const AmplitudeSample m = minus_(t);
  return {coeffs_.plus * p.value + coeffs_.minus * m.value,
          coeffs_.plus * p.derivative + coeffs_.minus * m.derivative};
}

double MatchedSolution::phase_at(double t) const {
  return state0_.phase + fields::integrate_detuning(detuning_, t_start_, t);
}

StateVector MatchedSolution::state(double t, double phase) const {
  const AmplitudeSample s = a2(t);
  return {recover_a1(rabi_, s.derivative, phase), s.value, phase};
}

std::vector<StateVector> MatchedSolution::trajectory(std::span<const double> times) const {
  std::vector<StateVector> out;
  out.reserve(times.size());
  double t_prev = t_start_;
  double phase = state0_.phase;
  for (const double t : times) {
    phase += fields::integrate_detuning(detuning_, t_prev, t);
    t_prev = t;
    out.push_back(state(t, phase));
  }
  return out;
}

FloquetReport floquet_analytic(const N2Config& cfg) {
  cfg.validate();
  const double d = cfg.scaled_delta1();
  const double r = generalized_rabi(cfg);
  FloquetReport report;
  report.lambda1 = cfg.drive * 0.5 * (d - r);
  report.lambda2 = cfg.drive * 0.5 * (d + r);
  return report;
}

std::vector<Harmonic> harmonic_content(const N2Config& cfg, int n_harmonics, Branch branch) {
  cfg.validate();
  if (n_harmonics < 1) throw ParameterError("harmonic_content: need at least one harmonic");
  const double d = cfg.scaled_delta1();
  const double r = sign_of(branch) * generalized_rabi(cfg);
  const double a = cfg.singular_point();
  const double k0 = (r - 1.0) * (d - 1.0);
  const double k1 = 2.0 * (r + d);

  std::vector<Harmonic> out;
  out.reserve(n_harmonics + 1);
  if (a > 1.0) {
    // 1/(1-z) = -Σ_{n≥1} z^{-n}
    out.push_back({0, k0});
    for (int n = 1; n <= n_harmonics; ++n) out.push_back({-n, -k1 * std::pow(a, -0.5 * n)});
  } else {
    out.push_back({0, k0 + k1});
    for (int n = 1; n <= n_harmonics; ++n) out.push_back({n, k1 * std::pow(a, 0.5 * n)});
  }
  return out;
}

}  // namespace heuncross::closedform
