#include "heuncross/kernels.hpp"

#include "heuncross/parallel.hpp"

namespace heuncross::kernels {

std::vector<double> sample_detuning(const fields::DetuningFn& detuning, std::span<const double> times) {
  return parallel_map<double>(times.size(), [&](std::size_t i) { return detuning(times[i]); });
}

std::vector<double> sample_detuning_serial(const fields::DetuningFn& detuning,
                                           std::span<const double> times) {
  return serial_map<double>(times.size(), [&](std::size_t i) { return detuning(times[i]); });
}

std::vector<cplx> sample_amplitude(const closedform::MatchedSolution& solution,
                                   std::span<const double> times) {
  return parallel_map<cplx>(times.size(), [&](std::size_t i) { return solution.a2(times[i]).value; });
}

std::vector<cplx> sample_amplitude_serial(const closedform::MatchedSolution& solution,
                                          std::span<const double> times) {
  return serial_map<cplx>(times.size(), [&](std::size_t i) { return solution.a2(times[i]).value; });
}

std::vector<closedform::FloquetReport> floquet_sweep(std::span<const fields::N2Config> configs,
                                                     const oracle::Options& opts) {
  return parallel_map<closedform::FloquetReport>(
      configs.size(), [&](std::size_t i) { return analysis::floquet_report(configs[i], opts); });
}

std::vector<closedform::FloquetReport> floquet_sweep_serial(std::span<const fields::N2Config> configs,
                                                            const oracle::Options& opts) {
  return serial_map<closedform::FloquetReport>(
      configs.size(), [&](std::size_t i) { return analysis::floquet_report(configs[i], opts); });
}

namespace {

analysis::Comparison compare_one(const fields::N2Config& cfg, const StateVector& state0,
                                 double periods, std::size_t samples, const oracle::Options& opts) {
  return analysis::compare_n2(cfg, state0, cfg.t0, cfg.t0 + periods * cfg.period(), samples, opts);
}

}  // namespace

std::vector<analysis::Comparison> compare_sweep(std::span<const fields::N2Config> configs,
                                                const StateVector& state0, double periods,
                                                std::size_t samples, const oracle::Options& opts) {
  return parallel_map<analysis::Comparison>(configs.size(), [&](std::size_t i) {
    return compare_one(configs[i], state0, periods, samples, opts);
  });
}

std::vector<analysis::Comparison> compare_sweep_serial(std::span<const fields::N2Config> configs,
                                                       const StateVector& state0, double periods,
                                                       std::size_t samples,
                                                       const oracle::Options& opts) {
  return serial_map<analysis::Comparison>(configs.size(), [&](std::size_t i) {
    return compare_one(configs[i], state0, periods, samples, opts);
  });
}

}  // namespace heuncross::kernels
