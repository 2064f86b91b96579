#pragma once

// Exact solution of the unconditionally solvable (N = 2) model: the
// three-Beta Heun function, its quasi-polynomial form, the physical
// amplitudes, initial-condition matching and the Floquet exponents.

#include <array>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "heuncross/common.hpp"
#include "heuncross/fields.hpp"
#include "heuncross/specfun.hpp"

namespace heuncross::closedform {

using specfun::UnwoundPoint;
using fields::N2Config;

/// R = √(4U₀² + Δ₁²), scaled units.
double generalized_rabi(double u0, double delta1);
double generalized_rabi(const N2Config& cfg);

/// Coefficients of B_z(R,-1), B_z(R+1,-1), B_z(R+2,-1) in the three-Beta sum.
/// `branch` = minus replaces R by -R (the second solution).
std::array<cplx, 3> three_beta_coefficients(double delta1, double u0, Branch branch = Branch::plus);

/// Three-Beta sum, reduced with the neighbour recurrence. The left-over Beta
/// coefficient cancels for this model; if it did not, |z| < 1 would be needed.
cplx hg_three_beta(double delta1, double u0, const UnwoundPoint& z, Branch branch = Branch::plus);
cplx hg_three_beta(double delta1, double u0, cplx z, Branch branch = Branch::plus);

/// z^R [(z-1)(1+RΔ₁) - (z+1)(R+Δ₁)] / [R(R+1)(Δ₁+1)(z-1)].
cplx hg_quasipoly(double delta1, double u0, const UnwoundPoint& z, Branch branch = Branch::plus);
cplx hg_quasipoly(double delta1, double u0, cplx z, Branch branch = Branch::plus);

/// z(t) = √a · e^{i·drive·(t - t0)} with the angle kept unwrapped.
UnwoundPoint z_of_t(const N2Config& cfg, double t);

/// a2 = z^{(Δ₁±R)/2} [(±R-1)(Δ₁-1) + 2(±R+Δ₁)/(1-z)], unnormalized (C₀ = 1),
/// with its physical time derivative.
AmplitudeSample amplitude_n2(const N2Config& cfg, Branch branch, double t);

/// The same fundamental solution through the Beta route: z^{(Δ₁∓R)/2}·H_G
/// with H_G from hg_three_beta. Proportional to amplitude_n2 by R(R+1)(Δ₁+1).
cplx amplitude_n2_beta_route(const N2Config& cfg, Branch branch, double t);

/// The T-periodic bracket of amplitude_n2.
cplx periodic_bracket(const N2Config& cfg, Branch branch, double t);

/// a1 = i·(da2/dt)·e^{-iδ}/U.
cplx recover_a1(double rabi, cplx a2_derivative, double phase);
cplx recover_a1(const N2Config& cfg, cplx a2_value, cplx a2_derivative, double phase);

using FundamentalFn = std::function<AmplitudeSample(double)>;

struct MatchCoefficients {
  cplx plus{0.0};
  cplx minus{0.0};
  cplx wronskian{0.0};  // a2₊ a1₋ - a2₋ a1₊ at t_start
};

/// Solves C₊·sol₊ + C₋·sol₋ = (a1, a2) at t_start with a1 from recover_a1.
MatchCoefficients match_initial(const FundamentalFn& plus, const FundamentalFn& minus, double rabi,
                                const StateVector& state0, double t_start);
MatchCoefficients match_initial(const N2Config& cfg, const StateVector& state0, double t_start);

/// A fundamental pair combined to satisfy an initial state.
class MatchedSolution {
 public:
  MatchedSolution(FundamentalFn plus, FundamentalFn minus, double rabi, fields::DetuningFn detuning,
                  const StateVector& state0, double t_start);

  static MatchedSolution n2(const N2Config& cfg, const StateVector& state0, double t_start);

  AmplitudeSample a2(double t) const;
  double phase_at(double t) const;
  StateVector state(double t, double phase) const;
  StateVector state(double t) const { return state(t, phase_at(t)); }
  /// States at `times`, accumulating the phase from one time to the next.
  std::vector<StateVector> trajectory(std::span<const double> times) const;

  const MatchCoefficients& coefficients() const { return coeffs_; }
  double t_start() const { return t_start_; }

 private:
  FundamentalFn plus_;
  FundamentalFn minus_;
  double rabi_;
  fields::DetuningFn detuning_;
  StateVector state0_;
  double t_start_;
  MatchCoefficients coeffs_;
};

struct FloquetReport {
  double lambda1 = 0.0;  // drive·(Δ₁ - R)/2
  double lambda2 = 0.0;  // drive·(Δ₁ + R)/2
  std::array<cplx, 2> monodromy_eigs{};
  std::array<double, 2> monodromy_exponents{};
  double residual_mod_drive = std::numeric_limits<double>::quiet_NaN();
  double unit_circle_deviation = std::numeric_limits<double>::quiet_NaN();
};

/// Analytic exponents in physical units; monodromy fields are left empty.
FloquetReport floquet_analytic(const N2Config& cfg);

struct Harmonic {
  int order = 0;  // multiple of the drive frequency
  cplx coefficient{0.0};
};

/// Fourier coefficients of the periodic bracket in e^{i·order·drive·(t - t0)}.
/// For a > 1 the ladder runs over orders 0, -1, ..., -n (expansion in 1/z),
/// for a < 1 over 0, 1, ..., n.
std::vector<Harmonic> harmonic_content(const N2Config& cfg, int n_harmonics,
                                       Branch branch = Branch::plus);

}  // namespace heuncross::closedform
