#pragma once

// Driving-field configurations: the six-parameter constant-amplitude family
// with periodic detuning, its unconditionally solvable two-parameter member,
// the conditionally solvable N = 3 member, and crossing classification.

#include <functional>
#include <utility>
#include <vector>

#include "heuncross/common.hpp"

namespace heuncross::fields {

using DetuningFn = std::function<double(double)>;

/// U(t) = u0,
/// δ_t(t) = delta1 + (1-a)·delta2 / (1 + a - 2√a cos(drive·(t - t0))).
/// Frequencies in rad/time; `a` is the third singular point of the Heun equation.
struct FieldConfig {
  double u0 = 1.0;
  double a = 2.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double drive = 1.0;
  double t0 = 0.0;

  void validate() const;
  double period() const { return kTwoPi / drive; }
  /// Same field in scaled time τ = drive·(t - t0): every frequency divided by drive.
  FieldConfig scaled() const;
};

/// The unconditionally solvable member: delta2 = 2·drive and
/// a = (Δ₁+1)/(Δ₁-1) with Δ₁ = delta1/drive, |Δ₁| > 1.
struct N2Config {
  double u0 = 1.0;
  double delta1 = 2.0;
  double drive = 1.0;
  double t0 = 0.0;

  void validate() const;
  double period() const { return kTwoPi / drive; }
  double scaled_delta1() const { return delta1 / drive; }
  double scaled_u0() const { return u0 / drive; }
  double singular_point() const;
  FieldConfig to_field_config() const;
};

double detuning_general(const FieldConfig& cfg, double t);
double detuning_general_derivative(const FieldConfig& cfg, double t);

/// Δ₁ - 2/(Δ₁ - sgn(Δ₁)·√(Δ₁²-1)·cos τ) in scaled units; identical to
/// detuning_general of to_field_config().
double detuning_n2(const N2Config& cfg, double t);

/// The N = 3 detuning in scaled units (drive = 1, t0 = 0), evaluated exactly as
///   Δ₁ + (9 - 3√3 R - 9Δ₁) /
///        ((√3 - R)R + 3(Δ₁-1)Δ₁ + √(1 - 6/(3 + √3 R - 3Δ₁)) · (R² - 3(Δ₁-1)²) · cos t)
/// with R = ±√(U₀² + Δ₁² - 1) chosen by `branch`.
double detuning_n3(double u0, double delta1, Branch branch, double t);

/// The member of the general family that reproduces detuning_n3 (delta2 = 3,
/// drive = 1, t0 = 0 or π). Throws DomainError where detuning_n3 is undefined.
FieldConfig n3_field_config(double u0, double delta1, Branch branch);

/// Ratios Δ₁/Δ₂ at which resonance is touched at an extremum of the drive:
/// ((√a+1)/(√a-1), (√a-1)/(√a+1)).
std::pair<double, double> glancing_ratios(double a);

/// a = (Δ₁+1)/(Δ₁-1).
double a_from_delta1(double delta1);

/// Phase δ(t_to) - δ(t_from) = ∫ δ_t dt, adaptive Gauss–Kronrod.
double integrate_detuning(const DetuningFn& detuning, double t_from, double t_to,
                          double tolerance = tol::kQuadrature);

enum class CrossingKind { crossing, glancing, non_crossing };
const char* to_string(CrossingKind kind);

struct CrossingReport {
  CrossingKind kind = CrossingKind::non_crossing;
  std::vector<double> times;   // ascending
  std::vector<bool> tangent;   // tangent[i]: times[i] is a double root
};

/// Roots of δ_t in [t_lo, t_hi): 4096 samples per period, sign-change
/// bracketing refined by bisection, plus double roots at the extrema of the
/// drive cosine.
CrossingReport classify_crossings(const FieldConfig& cfg, double t_lo, double t_hi);
CrossingReport classify_crossings(const N2Config& cfg, double t_lo, double t_hi);

inline constexpr int kSamplesPerPeriod = 4096;

}  // namespace heuncross::fields
