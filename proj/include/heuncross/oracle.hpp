#pragma once

// Numerical ground truth: adaptive integration of the coupled amplitude
// equations i·a1' = U e^{-iδ} a2, i·a2' = U e^{iδ} a1 with δ' = δ_t
// co-integrated, plus monodromy-based Floquet exponents.

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "heuncross/common.hpp"
#include "heuncross/fields.hpp"

namespace heuncross::oracle {

/// Field seen by the integrator: Rabi frequency U(t) and detuning δ_t(t).
struct Field {
  std::function<double(double)> rabi;
  fields::DetuningFn detuning;
};

Field make_field(const fields::FieldConfig& cfg);
Field make_field(const fields::N2Config& cfg);
/// The printed N = 3 detuning (scaled units, drive = 1, t0 = 0).
Field make_n3_field(double u0, double delta1, Branch branch);

struct Options {
  double rtol = 1e-10;
  double atol = 1e-12;
  std::size_t max_steps = 10'000'000;
  double initial_step = 1e-3;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  double norm_drift = 0.0;  // max | |a1|²+|a2|² - initial |
};

/// Integrates from t_begin to t_end (either direction) and records every
/// accepted step.
Trajectory integrate(const Field& field, const StateVector& state0, double t_begin, double t_end,
                     const Options& opts = {});

/// Dense-output states at `times`, which must be monotone in the direction
/// of integration away from t_begin.
Trajectory integrate_at(const Field& field, const StateVector& state0, double t_begin,
                        std::span<const double> times, const Options& opts = {});

using Matrix2 = std::array<std::array<cplx, 2>, 2>;

struct Monodromy {
  /// Transfer over one period for (a1·e^{iδ}, a2), δ(t_ref) = 0.
  Matrix2 matrix{};
  std::array<cplx, 2> eigenvalues{};
  std::array<double, 2> exponents{};  // arg(μ)/T in [-drive/2, drive/2)
  double unit_circle_deviation = 0.0; // max | |μ| - 1 |
};

Monodromy monodromy(const Field& field, double t_ref, double period, const Options& opts = {});

/// (1/T) ∫_{t_ref}^{t_ref+T} δ_t dt.
double mean_detuning(const Field& field, double period, double t_ref = 0.0);

/// x reduced to [-drive/2, drive/2).
double wrap_exponent(double x, double drive);
/// Distance between x and y on the circle of circumference `drive`.
double exponent_distance(double x, double y, double drive);

}  // namespace heuncross::oracle
