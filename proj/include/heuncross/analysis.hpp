#pragma once

// Pipelines that put the closed form and the oracle side by side.

#include <cstddef>
#include <vector>

#include "heuncross/closedform.hpp"
#include "heuncross/oracle.hpp"

namespace heuncross::analysis {

std::vector<double> linspace(double lo, double hi, std::size_t count);

struct Comparison {
  std::vector<double> times;
  std::vector<StateVector> closed;
  std::vector<StateVector> numeric;
  double max_a2_deviation = 0.0;
  double max_a1_deviation = 0.0;
  double oracle_norm_drift = 0.0;
};

/// Matched closed form against the oracle on `samples` equally spaced times
/// in [t_start, t_end].
Comparison compare_n2(const fields::N2Config& cfg, const StateVector& state0, double t_start,
                      double t_end, std::size_t samples, const oracle::Options& opts = {});

/// Analytic exponents plus monodromy eigenvalues; the residual is the larger
/// circle distance (mod drive) under the better pairing of the two sets.
closedform::FloquetReport floquet_report(const fields::N2Config& cfg,
                                         const oracle::Options& opts = {});

}  // namespace heuncross::analysis
