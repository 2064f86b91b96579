#include "heuncross/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace heuncross::analysis {

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count < 2) throw ParameterError("linspace: need at least two points");
  std::vector<double> out(count);
  const double h = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + h * static_cast<double>(i);
  out.back() = hi;
  return out;
}

Comparison compare_n2(const fields::N2Config& cfg, const StateVector& state0, double t_start,
                      double t_end, std::size_t samples, const oracle::Options& opts) {
  Comparison out;
  out.times = linspace(t_start, t_end, samples);
  const auto solution = closedform::MatchedSolution::n2(cfg, state0, t_start);
  out.closed = solution.trajectory(out.times);
  const auto traj = oracle::integrate_at(oracle::make_field(cfg), state0, t_start, out.times, opts);
  out.numeric = traj.states;
  out.oracle_norm_drift = traj.norm_drift;
  for (std::size_t i = 0; i < out.times.size(); ++i) {
    out.max_a2_deviation = std::max(out.max_a2_deviation, std::abs(out.closed[i].a2 - out.numeric[i].a2));
    out.max_a1_deviation = std::max(out.max_a1_deviation, std::abs(out.closed[i].a1 - out.numeric[i].a1));
  }
  return out;
}

closedform::FloquetReport floquet_report(const fields::N2Config& cfg, const oracle::Options& opts) {
  closedform::FloquetReport report = closedform::floquet_analytic(cfg);
  const auto mono = oracle::monodromy(oracle::make_field(cfg), cfg.t0, cfg.period(), opts);
  report.monodromy_eigs = mono.eigenvalues;
  report.monodromy_exponents = mono.exponents;
  report.unit_circle_deviation = mono.unit_circle_deviation;

  const auto dist = [&](double x, double y) { return oracle::exponent_distance(x, y, cfg.drive); };
  const auto& e = mono.exponents;
  const double straight = std::max(dist(report.lambda1, e[0]), dist(report.lambda2, e[1]));
  const double crossed = std::max(dist(report.lambda1, e[1]), dist(report.lambda2, e[0]));
  report.residual_mod_drive = std::min(straight, crossed);
  return report;
}

}  // namespace heuncross::analysis
