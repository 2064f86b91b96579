#pragma once

// General Heun analytics for the constant-amplitude periodic family:
// parameter map, incomplete-Beta expansion by the three-term recurrence,
// termination and the accessory-parameter (q) equation.

#include <optional>
#include <vector>

#include "heuncross/common.hpp"
#include "heuncross/fields.hpp"
#include "heuncross/polynomial.hpp"
#include "heuncross/specfun.hpp"

namespace heuncross::heun {

/// Constants of u'' + (γ/z + δ/(z-1) + ε/(z-a))u' + (αβz - q)/(z(z-1)(z-a)) u = 0.
struct HeunParams {
  double a = 2.0;
  cplx q{0.0};
  cplx alpha{0.0};
  cplx beta{0.0};
  cplx gamma{0.0};
  cplx delta{0.0};
  cplx epsilon{0.0};

  /// γ + δ + ε - α - β - 1; zero for a Heun equation.
  cplx fuchs_residual() const { return gamma + delta + epsilon - alpha - beta - 1.0; }
};

/// Exponents of the prefactor z^α₁ (z-1)^α₂ (z-a)^α₃; α₂ = α₃ = 0 here.
struct PrefactorExponents {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha3 = 0.0;
  Branch branch = Branch::plus;
};

struct HeunMapping {
  HeunParams params;
  PrefactorExponents prefactor;
};

/// Heun constants for a field configuration (frequencies scaled by the drive):
/// γ = 1 ± √(4U₀²+Δ₁²), δ = Δ₂, ε = -Δ₂, α = 0, β = ±√(4U₀²+Δ₁²),
/// α₁ = Δ₁/2 ± √(U₀²+Δ₁²/4), q = (a-1)Δ₂α₁.
HeunMapping map_to_heun(const fields::FieldConfig& cfg, Branch branch);

/// R_n c_n + Q_{n-1} c_{n-1} + P_{n-2} c_{n-2} = 0 with the left end fixed at γ₀ = 1-γ.
struct RecurrenceCoeffs {
  cplx r;
  cplx q;
  cplx p;
};

RecurrenceCoeffs recurrence_coeffs(const HeunParams& hp, int n);

/// u = Σ c_n B_z(γ₀ + n, δ_n) with γ₀ = 1-γ and δ_n = 1-δ.
struct BetaSeries {
  cplx gamma0{0.0};
  cplx delta_n{0.0};
  std::vector<cplx> coeffs;  // c_0 = 1
  bool terminated = false;
  std::optional<int> order;  // N when c_{N+1} = c_{N+2} = 0

  double max_abs() const;
  /// Coefficients that make up the sum: c_0..c_N when terminated, all otherwise.
  std::vector<cplx> active() const;
};

/// Forward recursion. Stops early once two consecutive coefficients fall
/// below tol::kTermination · max|c|.
BetaSeries expand(const HeunParams& hp, int max_terms);

/// Heun-function value of the series. Terminated series are folded to
/// elementary form (any z off the unit circle when the fold closes);
/// otherwise |z| < 1 is required.
cplx eval_series(const BetaSeries& bs, const HeunParams& hp, const specfun::UnwoundPoint& z);
cplx eval_series(const BetaSeries& bs, const HeunParams& hp, cplx z);

/// z · du/dz of the series, using d/dz B_z(p,q) = z^{p-1}(1-z)^{q-1}.
cplx eval_series_z_derivative(const BetaSeries& bs, const specfun::UnwoundPoint& z);

/// Degree-(N+1) polynomial in q whose roots make c_{N+1} vanish. `hp.q` is
/// ignored. Requires ε = -N or γ + δ - 2 = N.
Polynomial q_polynomial(const HeunParams& hp, int order);

enum class TerminationBranch { epsilon, gamma_delta };  // ε = -N | γ + δ - 2 = N
/// Whether the termination constraint on a involves U₀ (conditional) or not
/// (unconditional); trivial when only a = 1 or every a is allowed. Whether a
/// physical a > 0 exists is recorded separately in admissible_a.
enum class Integrability { trivial, unconditional, conditional };

const char* to_string(TerminationBranch b);
const char* to_string(Integrability k);

/// c_{N+1} = 0 with the physical q, as a polynomial in the singular point a,
/// for given (U₀, Δ₁) in scaled units.
Polynomial termination_constraint(double u0, double delta1, int order, TerminationBranch branch,
                                  Branch sign = Branch::plus);

struct TerminationRecord {
  int order = 0;
  TerminationBranch branch = TerminationBranch::epsilon;
  double delta2 = 0.0;            // imposed modulation (scaled)
  Integrability kind = Integrability::trivial;
  Polynomial constraint;          // in a, after removing the (a-1) factors
  std::vector<double> admissible_a;  // real, positive, != 1
  double drift = 0.0;             // change of the normalized constraint when U₀ doubles
};

/// For N = 0..n_max imposes the termination and classifies the q-equation.
/// Uses cfg's U₀ and Δ₁ (scaled); cfg.a and cfg.delta2 are not used.
std::vector<TerminationRecord> termination_search(const fields::FieldConfig& cfg, int n_max,
                                                  bool include_gamma_delta = false);

/// Fundamental solution a2(t) = z^α₁ · u(z), z = √a e^{i·drive·(t-t0)}, built
/// from the Beta series. Physical time in and out.
class SeriesSolution {
 public:
  SeriesSolution(const fields::FieldConfig& cfg, Branch branch, int max_terms = 64);

  AmplitudeSample operator()(double t) const;

  const HeunMapping& mapping() const { return mapping_; }
  const BetaSeries& series() const { return series_; }

 private:
  fields::FieldConfig cfg_;
  HeunMapping mapping_;
  BetaSeries series_;
};

}  // namespace heuncross::heun
