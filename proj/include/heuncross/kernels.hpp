#pragma once

// Data-parallel kernels (OpenMP) with serial reference twins. The twins are
// kept for testing and benchmarking; results must agree element by element.

#include <span>
#include <vector>

#include "heuncross/analysis.hpp"

namespace heuncross::kernels {

std::vector<double> sample_detuning(const fields::DetuningFn& detuning, std::span<const double> times);
std::vector<double> sample_detuning_serial(const fields::DetuningFn& detuning,
                                           std::span<const double> times);

/// a2(t) of a matched solution.
std::vector<cplx> sample_amplitude(const closedform::MatchedSolution& solution,
                                   std::span<const double> times);
std::vector<cplx> sample_amplitude_serial(const closedform::MatchedSolution& solution,
                                          std::span<const double> times);

std::vector<closedform::FloquetReport> floquet_sweep(std::span<const fields::N2Config> configs,
                                                     const oracle::Options& opts = {});
std::vector<closedform::FloquetReport> floquet_sweep_serial(std::span<const fields::N2Config> configs,
                                                            const oracle::Options& opts = {});

/// compare_n2 for each configuration over `periods` drive periods from t0.
std::vector<analysis::Comparison> compare_sweep(std::span<const fields::N2Config> configs,
                                                const StateVector& state0, double periods,
                                                std::size_t samples, const oracle::Options& opts = {});
std::vector<analysis::Comparison> compare_sweep_serial(std::span<const fields::N2Config> configs,
                                                       const StateVector& state0, double periods,
                                                       std::size_t samples,
                                                       const oracle::Options& opts = {});

}  // namespace heuncross::kernels
