#include "heuncross/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace heuncross::specfun {

namespace {

bool is_nonpositive_integer(cplx x) {
  return x.imag() == 0.0 && x.real() <= 0.0 && std::floor(x.real()) == x.real();
}

bool is_small_integer(cplx x) {
  return x.imag() == 0.0 && std::floor(x.real()) == x.real() && std::abs(x.real()) <= 64.0;
}

cplx integer_power(cplx w, int n) {
  cplx result{1.0, 0.0};
  cplx base = n < 0 ? 1.0 / w : w;
  for (int k = std::abs(n); k > 0; --k) result *= base;
  return result;
}

}  // namespace

UnwoundPoint::UnwoundPoint(double modulus_, double angle_) : modulus(modulus_), angle(angle_) {
  if (!(modulus_ > 0.0) || !std::isfinite(modulus_) || !std::isfinite(angle_)) {
    throw DomainError("UnwoundPoint: modulus must be positive and finite");
  }
}

cplx hyp2f1(cplx a, cplx b, cplx c, cplx z) {
  if (!(std::abs(z) < 1.0)) {
    throw DomainError("hyp2f1: series requires |z| < 1");
  }
  if (is_nonpositive_integer(c)) {
    throw ParameterError("hyp2f1: c is a non-positive integer");
  }
  cplx sum{1.0, 0.0};
  cplx term{1.0, 0.0};
  for (int k = 0; k < tol::kSeriesMaxTerms; ++k) {
    const double kk = k;
    term *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)) * z;
    sum += term;
    if (std::abs(term) <= tol::kSeries * std::abs(sum)) return sum;
  }
  throw NumericalError("hyp2f1: series did not converge within the term cap");
}

cplx unwound_power(const UnwoundPoint& z, cplx mu) {
  return std::exp(mu * cplx(std::log(z.modulus), z.angle));
}

cplx principal_pow_one_minus(cplx z, cplx b) {
  const cplx w = 1.0 - z;
  if (w == cplx(0.0, 0.0)) {
    if (b.real() > 0.0) return {0.0, 0.0};
    throw DomainError("(1-z)^b: singular at z = 1");
  }
  if (is_small_integer(b)) return integer_power(w, static_cast<int>(b.real()));
  return std::pow(w, b);
}

cplx inc_beta(cplx p, cplx q, cplx z) {
  if (is_nonpositive_integer(p)) {
    throw ParameterError("inc_beta: p must not be a non-positive integer");
  }
  if (!(std::abs(z) < 1.0)) {
    throw DomainError("inc_beta: series path requires |z| < 1");
  }
  if (z == cplx(0.0, 0.0)) {
    if (p.real() > 0.0) return {0.0, 0.0};
    throw DomainError("inc_beta: divergent at z = 0 for Re p <= 0");
  }
  return std::exp(p * std::log(z)) / p * hyp2f1(p, 1.0 - q, p + 1.0, z);
}

cplx inc_beta(cplx p, cplx q, const UnwoundPoint& z) {
  if (is_nonpositive_integer(p)) {
    throw ParameterError("inc_beta: p must not be a non-positive integer");
  }
  if (!(z.modulus < 1.0)) {
    throw DomainError("inc_beta: series path requires |z| < 1");
  }
  return unwound_power(z, p) / p * hyp2f1(p, 1.0 - q, p + 1.0, z.value());
}

cplx beta_step(cplx c, cplx b, cplx z) {
  if (c == cplx(0.0, 0.0)) throw ParameterError("beta_step: c = 0");
  if (z == cplx(0.0, 0.0) && c.real() <= 0.0) {
    throw DomainError("beta_step: z^c singular at z = 0");
  }
  const cplx zc = z == cplx(0.0, 0.0) ? cplx(0.0, 0.0) : std::exp(c * std::log(z));
  const cplx elementary = zc / c * principal_pow_one_minus(z, b);
  if (b + c == cplx(0.0, 0.0)) return elementary;
  return elementary + (b + c) / c * inc_beta(c + 1.0, b, z);
}

cplx beta_step(cplx c, cplx b, const UnwoundPoint& z) {
  if (c == cplx(0.0, 0.0)) throw ParameterError("beta_step: c = 0");
  const cplx elementary = unwound_power(z, c) / c * principal_pow_one_minus(z.value(), b);
  if (b + c == cplx(0.0, 0.0)) return elementary;
  return elementary + (b + c) / c * inc_beta(c + 1.0, b, z);
}

BetaFold fold_beta_sum(cplx p0, cplx b, std::span<const cplx> coeffs, const UnwoundPoint& z) {
  BetaFold fold;
  if (coeffs.empty()) {
    fold.top_parameter = p0;
    return fold;
  }
  const cplx one_minus_pow = principal_pow_one_minus(z.value(), b);
  cplx carry = coeffs[0];
  fold.scale = std::abs(carry);
  for (std::size_t n = 0; n + 1 < coeffs.size(); ++n) {
    const cplx p = p0 + static_cast<double>(n);
    if (p == cplx(0.0, 0.0)) throw ParameterError("fold_beta_sum: zero Beta parameter");
    fold.elementary += carry * unwound_power(z, p) / p * one_minus_pow;
    const cplx lifted = carry * (b + p) / p;
    fold.scale = std::max({fold.scale, std::abs(lifted), std::abs(coeffs[n + 1])});
    carry = lifted + coeffs[n + 1];
  }
  fold.remainder = carry;
  fold.top_parameter = p0 + static_cast<double>(coeffs.size() - 1);
  return fold;
}

cplx fold_value(const BetaFold& fold, cplx b, const UnwoundPoint& z) {
  if (fold.remainder_negligible()) return fold.elementary;
  return fold.elementary + fold.remainder * inc_beta(fold.top_parameter, b, z);
}

}  // namespace heuncross::specfun
