#pragma once

// Complex special-function kernels: Gauss 2F1, the incomplete Beta function,
// the neighbour recurrence between Beta functions and branch-tracked powers.

#include <span>

#include "heuncross/common.hpp"

namespace heuncross::specfun {

/// A point in the punctured plane with an unwrapped argument. Powers taken
/// through it follow the path the argument was accumulated along instead of
/// being reduced to the principal branch.
struct UnwoundPoint {
  double modulus = 1.0;
  double angle = 0.0;  // radians, not reduced mod 2π

  UnwoundPoint() = default;
  UnwoundPoint(double modulus, double angle);

  cplx value() const { return std::polar(modulus, angle); }
};

/// Gauss series 2F1(a, b; c; z) for |z| < 1.
cplx hyp2f1(cplx a, cplx b, cplx c, cplx z);

/// Incomplete Beta B_z(p, q) = ∫_0^z t^{p-1} (1-t)^{q-1} dt on the principal
/// branch of z^p, via B_z(p,q) = z^p/p · 2F1(p, 1-q; p+1; z). Requires |z| < 1.
cplx inc_beta(cplx p, cplx q, cplx z);

/// Same, with z^p continued along the path recorded in `z`.
cplx inc_beta(cplx p, cplx q, const UnwoundPoint& z);

/// B_z(c, b) from B_z(c+1, b) through
///   B_z(c,b) = z^c/c (1-z)^b + (b+c)/c · B_z(c+1,b).
/// When b + c = 0 the recursive term is absent and any z != 1 is accepted.
cplx beta_step(cplx c, cplx b, cplx z);
cplx beta_step(cplx c, cplx b, const UnwoundPoint& z);

/// exp(mu · (ln|z| + i·angle)).
cplx unwound_power(const UnwoundPoint& z, cplx mu);

/// (1 - z)^b on the principal branch; integer real b is done by repeated
/// multiplication.
cplx principal_pow_one_minus(cplx z, cplx b);

/// Result of folding Σ_n coeffs[n] · B_z(p0 + n, b) downward with the
/// neighbour recurrence: an elementary part plus `remainder` · B_z(p0 + M, b).
struct BetaFold {
  cplx elementary{0.0, 0.0};
  cplx remainder{0.0, 0.0};
  cplx top_parameter{0.0, 0.0};
  double scale = 0.0;  // largest |coefficient| met while folding

  bool remainder_negligible(double rel = tol::kCheck) const {
    return std::abs(remainder) <= rel * scale;
  }
};

BetaFold fold_beta_sum(cplx p0, cplx b, std::span<const cplx> coeffs, const UnwoundPoint& z);

/// Evaluates a fold: the remainder is dropped when negligible, otherwise it
/// needs the series for B_z and therefore |z| < 1.
cplx fold_value(const BetaFold& fold, cplx b, const UnwoundPoint& z);

}  // namespace heuncross::specfun
