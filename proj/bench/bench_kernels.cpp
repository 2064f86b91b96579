// Parallel kernels against their serial twins.

#include <benchmark/benchmark.h>

#include "heuncross/kernels.hpp"

using namespace heuncross;

namespace {

const StateVector kGround{{1.0, 0.0}, {0.0, 0.0}, 0.0};

std::vector<fields::N2Config> grid() {
  std::vector<fields::N2Config> out;
  for (const double d1 : {4.0 / 3.0, 2.0, 3.0, 5.0}) {
    for (const double u0 : {0.3, 1.0, 2.0, 3.5}) out.push_back({u0, d1, 1.0, 0.0});
  }
  return out;
}

template <bool Parallel>
void detuning(benchmark::State& state) {
  const fields::N2Config cfg{1.0, 3.0, 1.0, 0.0};
  const auto fn = [&](double t) { return fields::detuning_n2(cfg, t); };
  const auto times = analysis::linspace(0.0, 10.0 * kTwoPi, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::sample_detuning(fn, times)
                                      : kernels::sample_detuning_serial(fn, times));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void amplitude(benchmark::State& state) {
  const auto sol = closedform::MatchedSolution::n2({2.0, 2.0, 1.0, 0.0}, kGround, 0.0);
  const auto times = analysis::linspace(0.0, 10.0 * kTwoPi, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::sample_amplitude(sol, times)
                                      : kernels::sample_amplitude_serial(sol, times));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void floquet(benchmark::State& state) {
  const auto configs = grid();
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::floquet_sweep(configs) : kernels::floquet_sweep_serial(configs));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(configs.size()));
}

template <bool Parallel>
void compare(benchmark::State& state) {
  const auto configs = grid();
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::compare_sweep(configs, kGround, 5.0, 401)
                                      : kernels::compare_sweep_serial(configs, kGround, 5.0, 401));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(configs.size()));
}

}  // namespace

BENCHMARK(detuning<false>)->Name("detuning/serial")->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(detuning<true>)->Name("detuning/parallel")->Arg(1 << 16)->Arg(1 << 20)->UseRealTime();
BENCHMARK(amplitude<false>)->Name("amplitude/serial")->Arg(1 << 14)->Arg(1 << 17);
BENCHMARK(amplitude<true>)->Name("amplitude/parallel")->Arg(1 << 14)->Arg(1 << 17)->UseRealTime();
BENCHMARK(floquet<false>)->Name("floquet_sweep/serial");
BENCHMARK(floquet<true>)->Name("floquet_sweep/parallel")->UseRealTime();
BENCHMARK(compare<false>)->Name("compare_sweep/serial");
BENCHMARK(compare<true>)->Name("compare_sweep/parallel")->UseRealTime();

BENCHMARK_MAIN();
