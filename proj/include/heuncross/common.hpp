#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace heuncross {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Numerical tolerances shared by the library, the tests and the CLI.
namespace tol {
inline constexpr double kSeries = 1e-16;       // relative stop for power series
inline constexpr double kCheck = 1e-11;        // identity checks
inline constexpr double kTermination = 1e-12;  // |c_n| / max|c| counted as zero
inline constexpr double kFuchs = 1e-12;
inline constexpr double kGlancing = 1e-9;      // |δ_t| and |dδ_t/dt| at a double root
inline constexpr double kQuadrature = 1e-12;
inline constexpr int kSeriesMaxTerms = 10000;
}  // namespace tol

/// Argument outside the region where the function is defined or supported.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parameter value at which the formula is singular or the call is invalid.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Non-convergence, step-size underflow, singular linear systems.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Selects one of the two fundamental solutions (sign of the square root).
enum class Branch { plus, minus };

inline double sign_of(Branch b) { return b == Branch::plus ? 1.0 : -1.0; }
inline const char* to_string(Branch b) { return b == Branch::plus ? "plus" : "minus"; }

/// Amplitudes (a1, a2) of the two-state system together with the accumulated phase δ(t).
struct StateVector {
  cplx a1{1.0, 0.0};
  cplx a2{0.0, 0.0};
  double phase = 0.0;

  double norm() const { return std::norm(a1) + std::norm(a2); }
};

/// Value and time derivative of a fundamental solution a2(t).
struct AmplitudeSample {
  cplx value;
  cplx derivative;
};

}  // namespace heuncross
