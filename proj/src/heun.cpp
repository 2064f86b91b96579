#include "heuncross/heun.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace heuncross::heun {

using specfun::UnwoundPoint;

HeunMapping map_to_heun(const fields::FieldConfig& cfg, Branch branch) {
  cfg.validate();
  const fields::FieldConfig s = cfg.scaled();
  const double sign = sign_of(branch);
  const double root = std::sqrt(4.0 * s.u0 * s.u0 + s.delta1 * s.delta1);

  HeunMapping m;
  m.prefactor.alpha1 = 0.5 * (s.delta1 + sign * root);
  m.prefactor.branch = branch;
  m.params.a = s.a;
  m.params.gamma = 1.0 + sign * root;
  m.params.delta = s.delta2;
  m.params.epsilon = -s.delta2;
  m.params.alpha = 0.0;
  m.params.beta = sign * root;
  m.params.q = (s.a - 1.0) * s.delta2 * m.prefactor.alpha1;
  return m;
}

RecurrenceCoeffs recurrence_coeffs(const HeunParams& hp, int n) {
  if (n < 0) throw ParameterError("recurrence_coeffs: negative index");
  const double k = n;
  const cplx a = hp.a;
  return {a * k * (k - hp.gamma),
          -a * k * (k + 1.0 - hp.gamma - hp.delta) - (k + hp.epsilon) * (k + 1.0 - hp.gamma) - hp.q,
          (k + 2.0 - hp.gamma - hp.delta) * (k + hp.epsilon)};
}

double BetaSeries::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

std::vector<cplx> BetaSeries::active() const {
  if (!terminated || !order) return coeffs;
  return {coeffs.begin(), coeffs.begin() + *order + 1};
}

BetaSeries expand(const HeunParams& hp, int max_terms) {
  if (std::abs(hp.alpha) != 0.0) {
    throw ParameterError("expand: the Beta expansion needs a zero exponent at infinity (alpha = 0)");
  }
  if (max_terms < 0) throw ParameterError("expand: negative term count");

  BetaSeries bs;
  bs.gamma0 = 1.0 - hp.gamma;
  bs.delta_n = 1.0 - hp.delta;
  bs.coeffs.push_back(1.0);
  double running_max = 1.0;  // max |c_k| for k <= n-2

  for (int n = 1; n <= max_terms; ++n) {
    const RecurrenceCoeffs now = recurrence_coeffs(hp, n);
    const cplx prev1 = bs.coeffs[n - 1];
    const cplx prev2 = n >= 2 ? bs.coeffs[n - 2] : cplx(0.0);
    cplx numerator = -recurrence_coeffs(hp, n - 1).q * prev1;
    if (n >= 2) numerator -= recurrence_coeffs(hp, n - 2).p * prev2;

    cplx c{0.0};
    if (now.r == cplx(0.0)) {
      if (std::abs(numerator) > tol::kTermination * running_max) {
        throw ParameterError("expand: R_n = 0 with nonzero right-hand side (resonant gamma)");
      }
    } else {
      c = numerator / now.r;
    }
    bs.coeffs.push_back(c);

    if (n >= 2) {
      running_max = std::max(running_max, std::abs(bs.coeffs[n - 2]));
      const double cut = tol::kTermination * running_max;
      if (std::abs(bs.coeffs[n - 1]) <= cut && std::abs(c) <= cut) {
        bs.terminated = true;
        bs.order = n - 2;
        break;
      }
    }
  }
  return bs;
}

cplx eval_series(const BetaSeries& bs, const HeunParams& /*hp*/, const UnwoundPoint& z) {
  if (bs.terminated) {
    const auto active = bs.active();
    const auto fold = specfun::fold_beta_sum(bs.gamma0, bs.delta_n, active, z);
    return specfun::fold_value(fold, bs.delta_n, z);
  }
  cplx sum{0.0};
  for (std::size_t n = 0; n < bs.coeffs.size(); ++n) {
    if (bs.coeffs[n] == cplx(0.0)) continue;
    sum += bs.coeffs[n] * specfun::inc_beta(bs.gamma0 + static_cast<double>(n), bs.delta_n, z);
  }
  return sum;
}

cplx eval_series(const BetaSeries& bs, const HeunParams& hp, cplx z) {
  return eval_series(bs, hp, UnwoundPoint(std::abs(z), std::arg(z)));
}

cplx eval_series_z_derivative(const BetaSeries& bs, const UnwoundPoint& z) {
  const auto coeffs = bs.active();
  const cplx tail = specfun::principal_pow_one_minus(z.value(), bs.delta_n - 1.0);
  cplx sum{0.0};
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    sum += coeffs[n] * specfun::unwound_power(z, bs.gamma0 + static_cast<double>(n));
  }
  return sum * tail;
}

namespace {

// p_n = c_n · R_1···R_n with polynomial-valued recurrence coefficients:
// p_0 = 1, p_n = -(Q_{n-1} p_{n-1} + P_{n-2} R_{n-1} p_{n-2}).
Polynomial determinant_recurrence(int last, const std::function<Polynomial(int)>& r,
                                  const std::function<Polynomial(int)>& q,
                                  const std::function<Polynomial(int)>& p) {
  Polynomial older = Polynomial::constant(1.0);
  if (last == 0) return older;
  Polynomial newer = q(0) * cplx(-1.0);
  for (int n = 2; n <= last; ++n) {
    Polynomial next = (q(n - 1) * newer + p(n - 2) * r(n - 1) * older) * cplx(-1.0);
    older = std::move(newer);
    newer = std::move(next);
  }
  return newer;
}

bool near(cplx x, double target) { return std::abs(x - target) <= 1e-12 * std::max(1.0, std::abs(target)); }

}  // namespace

Polynomial q_polynomial(const HeunParams& hp, int order) {
  if (order < 0) throw ParameterError("q_polynomial: negative order");
  const double n_order = order;
  if (!near(hp.epsilon, -n_order) && !near(hp.gamma + hp.delta - 2.0, n_order)) {
    throw ParameterError("q_polynomial: neither epsilon = -N nor gamma + delta - 2 = N holds");
  }
  HeunParams base = hp;
  base.q = 0.0;
  return determinant_recurrence(
      order + 1,
      [&](int n) { return Polynomial::constant(recurrence_coeffs(base, n).r); },
      [&](int n) { return Polynomial::linear(recurrence_coeffs(base, n).q, -1.0); },
      [&](int n) { return Polynomial::constant(recurrence_coeffs(base, n).p); });
}

const char* to_string(TerminationBranch b) {
  return b == TerminationBranch::epsilon ? "epsilon=-N" : "gamma+delta-2=N";
}

const char* to_string(Integrability k) {
  switch (k) {
    case Integrability::trivial: return "trivial";
    case Integrability::unconditional: return "unconditional";
    case Integrability::conditional: return "conditional";
  }
  return "?";
}

namespace {

double imposed_delta2(double u0, double delta1, int order, TerminationBranch branch, Branch sign) {
  if (branch == TerminationBranch::epsilon) return order;
  const double root = std::sqrt(4.0 * u0 * u0 + delta1 * delta1);
  return order + 1.0 - sign_of(sign) * root;  // γ + δ - 2 = N with γ = 1 ± root
}

}  // namespace

Polynomial termination_constraint(double u0, double delta1, int order, TerminationBranch branch,
                                  Branch sign) {
  if (order < 0) throw ParameterError("termination_constraint: negative order");
  const double delta2 = imposed_delta2(u0, delta1, order, branch, sign);
  const double s = sign_of(sign);
  const double root = std::sqrt(4.0 * u0 * u0 + delta1 * delta1);
  const cplx gamma = 1.0 + s * root;
  const cplx delta = delta2;
  const cplx epsilon = -delta2;
  const double alpha1 = 0.5 * (delta1 + s * root);
  const double qa = delta2 * alpha1;  // q = qa·(a - 1)

  return determinant_recurrence(
      order + 1,
      [&](int n) { return Polynomial::linear(0.0, static_cast<double>(n) * (static_cast<double>(n) - gamma)); },
      [&](int n) {
        const double k = n;
        return Polynomial::linear(-(k + epsilon) * (k + 1.0 - gamma) + qa,
                                  -k * (k + 1.0 - gamma - delta) - qa);
      },
      [&](int n) {
        const double k = n;
        return Polynomial::constant((k + 2.0 - gamma - delta) * (k + epsilon));
      });
}

namespace {

struct ReducedConstraint {
  Polynomial poly;
  bool identically_zero = false;
};

ReducedConstraint reduce(const Polynomial& raw) {
  // Strips the (a-1) factors; a = 1 removes the modulation altogether.
  const double scale = raw.norm();
  if (scale == 0.0 || raw.trimmed(1e-13).is_zero()) return {Polynomial{}, true};
  Polynomial poly = raw.trimmed(1e-13);
  for (;;) {
    cplx remainder{0.0};
    Polynomial quotient = poly.deflate(1.0, &remainder);
    if (poly.degree() < 1 || std::abs(remainder) > 1e-10 * poly.norm()) break;
    poly = quotient.trimmed(1e-13);
  }
  return {poly, false};
}

std::vector<cplx> normalized(const Polynomial& p) {
  std::vector<cplx> c = p.coeffs();
  const int d = p.degree();
  if (d < 0) return c;
  const cplx lead = c[d];
  c.resize(d + 1);
  for (auto& x : c) x /= lead;
  return c;
}

}  // namespace

std::vector<TerminationRecord> termination_search(const fields::FieldConfig& cfg, int n_max,
                                                  bool include_gamma_delta) {
  if (n_max < 0) throw ParameterError("termination_search: negative n_max");
  if (!(cfg.u0 > 0.0) || !(cfg.drive > 0.0)) throw ParameterError("termination_search: invalid field");
  const double u0 = cfg.u0 / cfg.drive;
  const double delta1 = cfg.delta1 / cfg.drive;

  std::vector<TerminationRecord> out;
  std::vector<TerminationBranch> branches{TerminationBranch::epsilon};
  if (include_gamma_delta) branches.push_back(TerminationBranch::gamma_delta);

  for (int order = 0; order <= n_max; ++order) {
    for (const auto branch : branches) {
      TerminationRecord rec;
      rec.order = order;
      rec.branch = branch;
      rec.delta2 = imposed_delta2(u0, delta1, order, branch, Branch::plus);

      const ReducedConstraint here = reduce(termination_constraint(u0, delta1, order, branch));
      rec.constraint = here.poly;
      if (here.identically_zero || here.poly.degree() < 1) {
        // Either every a works with Δ₂ = 0, or only a = 1, where the modulation vanishes.
        rec.kind = Integrability::trivial;
        out.push_back(std::move(rec));
        continue;
      }

      for (const cplx& root : here.poly.roots()) {
        const double re = root.real();
        // a = 0 merges z = a with z = 0 and a = 1 removes the modulation.
        if (std::abs(root.imag()) <= 1e-9 * std::max(1.0, std::abs(root)) && re > 1e-9 &&
            std::abs(re - 1.0) > 1e-9) {
          rec.admissible_a.push_back(re);
        }
      }
      std::sort(rec.admissible_a.begin(), rec.admissible_a.end());

      const ReducedConstraint moved =
          reduce(termination_constraint(2.0 * u0, delta1, order, branch));
      const auto a = normalized(here.poly);
      const auto b = normalized(moved.poly);
      if (a.size() != b.size()) {
        rec.drift = 1.0;
      } else {
        double diff = 0.0;
        double ref = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) {
          diff += std::norm(a[k] - b[k]);
          ref += std::norm(a[k]);
        }
        rec.drift = std::sqrt(diff / ref);
      }

      rec.kind = rec.drift <= 1e-9 ? Integrability::unconditional : Integrability::conditional;
      out.push_back(std::move(rec));
    }
  }
  return out;
}

SeriesSolution::SeriesSolution(const fields::FieldConfig& cfg, Branch branch, int max_terms)
    : cfg_(cfg), mapping_(map_to_heun(cfg, branch)), series_(expand(mapping_.params, max_terms)) {}

AmplitudeSample SeriesSolution::operator()(double t) const {
  const UnwoundPoint z(std::sqrt(cfg_.a), cfg_.drive * (t - cfg_.t0));
  const double alpha1 = mapping_.prefactor.alpha1;
  const cplx prefactor = specfun::unwound_power(z, alpha1);
  const cplx u = eval_series(series_, mapping_.params, z);
  const cplx zu = eval_series_z_derivative(series_, z);
  const cplx i{0.0, 1.0};
  return {prefactor * u, cfg_.drive * i * prefactor * (alpha1 * u + zu)};
}

}  // namespace heuncross::heun
