#include "heuncross/fields.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "heuncross/parallel.hpp"

namespace heuncross::fields {

void FieldConfig::validate() const {
  if (!(u0 > 0.0)) throw ParameterError("FieldConfig: u0 must be positive");
  if (!(a > 0.0)) throw ParameterError("FieldConfig: a must be positive");
  if (a == 1.0) throw ParameterError("FieldConfig: a must differ from 1");
  if (!(drive > 0.0)) throw ParameterError("FieldConfig: drive frequency must be positive");
  if (!std::isfinite(delta1) || !std::isfinite(delta2) || !std::isfinite(t0)) {
    throw ParameterError("FieldConfig: non-finite parameter");
  }
}

FieldConfig FieldConfig::scaled() const {
  return {u0 / drive, a, delta1 / drive, delta2 / drive, 1.0, t0};
}

void N2Config::validate() const {
  if (!(u0 > 0.0)) throw ParameterError("N2Config: u0 must be positive");
  if (!(drive > 0.0)) throw ParameterError("N2Config: drive frequency must be positive");
  if (!(std::abs(delta1 / drive) > 1.0)) {
    throw ParameterError("N2Config: requires |delta1/drive| > 1");
  }
  if (!std::isfinite(t0)) throw ParameterError("N2Config: non-finite t0");
}

double N2Config::singular_point() const { return a_from_delta1(scaled_delta1()); }

FieldConfig N2Config::to_field_config() const {
  return {u0, singular_point(), delta1, 2.0 * drive, drive, t0};
}

double detuning_general(const FieldConfig& cfg, double t) {
  const double theta = cfg.drive * (t - cfg.t0);
  const double den = 1.0 + cfg.a - 2.0 * std::sqrt(cfg.a) * std::cos(theta);
  return cfg.delta1 + (1.0 - cfg.a) * cfg.delta2 / den;
}

double detuning_general_derivative(const FieldConfig& cfg, double t) {
  const double theta = cfg.drive * (t - cfg.t0);
  const double root_a = std::sqrt(cfg.a);
  const double den = 1.0 + cfg.a - 2.0 * root_a * std::cos(theta);
  return -(1.0 - cfg.a) * cfg.delta2 * 2.0 * root_a * cfg.drive * std::sin(theta) / (den * den);
}

double detuning_n2(const N2Config& cfg, double t) {
  const double d = cfg.scaled_delta1();
  if (!(std::abs(d) > 1.0)) throw ParameterError("detuning_n2: requires |delta1/drive| > 1");
  const double theta = cfg.drive * (t - cfg.t0);
  const double s = d > 0.0 ? 1.0 : -1.0;
  return cfg.drive * (d - 2.0 / (d - s * std::sqrt(d * d - 1.0) * std::cos(theta)));
}

namespace {

struct N3Coefficients {
  double numerator;
  double constant;
  double cosine;
};

N3Coefficients n3_coefficients(double u0, double delta1, Branch branch) {
  const double r2 = u0 * u0 + delta1 * delta1 - 1.0;
  if (r2 < 0.0) throw DomainError("detuning_n3: U0^2 + delta1^2 < 1");
  if (r2 == 0.0) throw DomainError("detuning_n3: R = 0 is not supported");
  const double r = sign_of(branch) * std::sqrt(r2);
  const double s3 = std::sqrt(3.0);
  const double inner = 3.0 + s3 * r - 3.0 * delta1;
  if (inner == 0.0) throw DomainError("detuning_n3: 3 + sqrt(3) R - 3 delta1 = 0");
  const double radicand = 1.0 - 6.0 / inner;
  if (radicand < 0.0) throw DomainError("detuning_n3: negative radicand");
  return {9.0 - 3.0 * s3 * r - 9.0 * delta1,
          (s3 - r) * r + 3.0 * (delta1 - 1.0) * delta1,
          std::sqrt(radicand) * (r * r - 3.0 * (delta1 - 1.0) * (delta1 - 1.0))};
}

}  // namespace

double detuning_n3(double u0, double delta1, Branch branch, double t) {
  const N3Coefficients c = n3_coefficients(u0, delta1, branch);
  return delta1 + c.numerator / (c.constant + c.cosine * std::cos(t));
}

FieldConfig n3_field_config(double u0, double delta1, Branch branch) {
  const N3Coefficients c = n3_coefficients(u0, delta1, branch);
  if (!(std::abs(c.constant) > std::abs(c.cosine))) {
    throw DomainError("n3_field_config: denominator vanishes during the period");
  }
  const double x = c.numerator / c.constant;  // 3(1-a)/(1+a)
  if (!(std::abs(x) < 3.0)) throw DomainError("n3_field_config: no positive singular point");
  const double a = (3.0 - x) / (3.0 + x);
  // -2√a·k = cosine coefficient with k = constant/(1+a): opposite signs mean t0 = 0
  const double t0 = c.constant * c.cosine <= 0.0 ? 0.0 : kPi;
  return {u0, a, delta1, 3.0, 1.0, t0};
}

std::pair<double, double> glancing_ratios(double a) {
  if (!(a > 0.0)) throw ParameterError("glancing_ratios: a must be positive");
  if (a == 1.0) throw DomainError("glancing_ratios: undefined at a = 1");
  const double r = std::sqrt(a);
  return {(r + 1.0) / (r - 1.0), (r - 1.0) / (r + 1.0)};
}

double a_from_delta1(double delta1) {
  if (delta1 == 1.0) throw ParameterError("a_from_delta1: singular at delta1 = 1");
  return (delta1 + 1.0) / (delta1 - 1.0);
}

double integrate_detuning(const DetuningFn& detuning, double t_from, double t_to, double tolerance) {
  if (t_from == t_to) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(detuning, t_from, t_to, 20, tolerance);
}

const char* to_string(CrossingKind kind) {
  switch (kind) {
    case CrossingKind::crossing: return "crossing";
    case CrossingKind::glancing: return "glancing";
    case CrossingKind::non_crossing: return "non-crossing";
  }
  return "?";
}

namespace {

double bisect(const FieldConfig& cfg, double lo, double hi, double f_lo) {
  double f_best_lo = f_lo;
  double f_hi = detuning_general(cfg, hi);
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double fm = detuning_general(cfg, mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (f_best_lo < 0.0)) {
      lo = mid;
      f_best_lo = fm;
    } else {
      hi = mid;
      f_hi = fm;
    }
  }
  return std::abs(f_best_lo) <= std::abs(f_hi) ? lo : hi;
}

}  // namespace

CrossingReport classify_crossings(const FieldConfig& cfg, double t_lo, double t_hi) {
  cfg.validate();
  if (!(t_hi > t_lo)) throw ParameterError("classify_crossings: empty window");
  const double period = cfg.period();
  const auto intervals = static_cast<std::size_t>(
      std::max(2.0, std::ceil(kSamplesPerPeriod * (t_hi - t_lo) / period)));
  const double h = (t_hi - t_lo) / static_cast<double>(intervals);
  const auto values = parallel_map<double>(intervals + 1, [&](std::size_t i) {
    return detuning_general(cfg, t_lo + h * static_cast<double>(i));
  });

  struct Root {
    double t;
    bool tangent;
  };
  std::vector<Root> roots;
  for (std::size_t i = 0; i < intervals; ++i) {
    const double t = t_lo + h * static_cast<double>(i);
    const double v = values[i];
    const double w = values[i + 1];
    if (v == 0.0) {
      const double prev = i > 0 ? values[i - 1] : detuning_general(cfg, t - h);
      if ((prev < 0.0 && w > 0.0) || (prev > 0.0 && w < 0.0)) roots.push_back({t, false});
    } else if ((v < 0.0 && w > 0.0) || (v > 0.0 && w < 0.0)) {
      roots.push_back({bisect(cfg, t, t + h, v), false});
    }
  }

  // Double roots sit at the extrema of cos(drive·(t - t0)).
  const double half = period / 2.0;
  const double k_first = std::ceil((t_lo - cfg.t0) / half);
  for (double k = k_first;; k += 1.0) {
    const double t = cfg.t0 + k * half;
    if (t >= t_hi) break;
    if (std::abs(detuning_general(cfg, t)) < tol::kGlancing &&
        std::abs(detuning_general_derivative(cfg, t)) < tol::kGlancing) {
      std::erase_if(roots, [&](const Root& r) { return std::abs(r.t - t) < 1e-6 * period; });
      roots.push_back({t, true});
    }
  }

  std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) { return x.t < y.t; });
  CrossingReport report;
  bool any_transversal = false;
  for (const auto& r : roots) {
    report.times.push_back(r.t);
    report.tangent.push_back(r.tangent);
    any_transversal = any_transversal || !r.tangent;
  }
  if (any_transversal) {
    report.kind = CrossingKind::crossing;
  } else if (!roots.empty()) {
    report.kind = CrossingKind::glancing;
  }
  return report;
}

CrossingReport classify_crossings(const N2Config& cfg, double t_lo, double t_hi) {
  cfg.validate();
  return classify_crossings(cfg.to_field_config(), t_lo, t_hi);
}

}  // namespace heuncross::fields
