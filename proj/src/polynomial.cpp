#include "heuncross/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace heuncross {

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {}

int Polynomial::degree() const {
  for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k) {
    if (coeffs_[k] != cplx(0.0, 0.0)) return k;
  }
  return -1;
}

cplx Polynomial::operator()(cplx x) const {
  cplx acc{0.0, 0.0};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

cplx Polynomial::derivative_at(cplx x) const {
  cplx acc{0.0, 0.0};
  for (std::size_t k = coeffs_.size(); k-- > 1;) acc = acc * x + static_cast<double>(k) * coeffs_[k];
  return acc;
}

double Polynomial::norm() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  std::vector<cplx> out(std::max(coeffs_.size(), rhs.coeffs_.size()));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k] += coeffs_[k];
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) out[k] += rhs.coeffs_[k];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const { return *this + rhs * cplx(-1.0); }

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  if (coeffs_.empty() || rhs.coeffs_.empty()) return {};
  std::vector<cplx> out(coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(cplx s) const {
  std::vector<cplx> out = coeffs_;
  for (auto& c : out) c *= s;
  return Polynomial(std::move(out));
}

Polynomial Polynomial::deflate(cplx root, cplx* remainder) const {
  const int n = degree();
  if (n <= 0) {
    if (remainder) *remainder = n < 0 ? cplx(0.0) : coeffs_[0];
    return {};
  }
  std::vector<cplx> out(n);
  cplx carry = coeffs_[n];
  for (int k = n - 1; k >= 0; --k) {
    out[k] = carry;
    carry = coeffs_[k] + carry * root;
  }
  if (remainder) *remainder = carry;
  return Polynomial(std::move(out));
}

Polynomial Polynomial::trimmed(double rel) const {
  const double cut = rel * norm();
  std::vector<cplx> out = coeffs_;
  while (!out.empty() && std::abs(out.back()) <= cut) out.pop_back();
  return Polynomial(std::move(out));
}

std::vector<cplx> Polynomial::roots() const {
  const int n = degree();
  if (n < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) companion(0, k) = -coeffs_[n - 1 - k] / coeffs_[n];
  for (int k = 1; k < n; ++k) companion(k, k - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericalError("Polynomial::roots: eigen solver failed");

  std::vector<cplx> out(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  for (auto& r : out) {
    for (int it = 0; it < 8; ++it) {
      const cplx d = derivative_at(r);
      if (d == cplx(0.0, 0.0)) break;
      const cplx value = (*this)(r);
      const cplx next = r - value / d;
      if (std::abs((*this)(next)) >= std::abs(value)) break;
      r = next;
    }
  }
  return out;
}

}  // namespace heuncross
