#pragma once

#include <vector>

#include "heuncross/common.hpp"

namespace heuncross {

/// Dense polynomial with complex coefficients, ascending powers.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cplx> coeffs);
  static Polynomial constant(cplx c) { return Polynomial({c}); }
  /// c0 + c1·x
  static Polynomial linear(cplx c0, cplx c1) { return Polynomial({c0, c1}); }

  const std::vector<cplx>& coeffs() const { return coeffs_; }
  /// Degree after dropping exact-zero leading coefficients; -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return degree() < 0; }

  cplx operator()(cplx x) const;
  cplx derivative_at(cplx x) const;
  double norm() const;  // Euclidean norm of the coefficient vector

  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial operator*(cplx s) const;

  /// Synthetic division by (x - root); the remainder is returned separately.
  Polynomial deflate(cplx root, cplx* remainder = nullptr) const;

  /// Drops leading coefficients below rel·norm().
  Polynomial trimmed(double rel) const;

  /// Roots by companion-matrix eigenvalues, each polished by Newton steps.
  std::vector<cplx> roots() const;

 private:
  std::vector<cplx> coeffs_;
};

}  // namespace heuncross
