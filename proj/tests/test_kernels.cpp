#include <cmath>

#include "doctest.h"
#include "heuncross/kernels.hpp"
#include "heuncross/parallel.hpp"

using namespace heuncross;

namespace {

const StateVector kGround{{1.0, 0.0}, {0.0, 0.0}, 0.0};

std::vector<fields::N2Config> grid() {
  std::vector<fields::N2Config> out;
  for (const double d1 : {4.0 / 3.0, 2.0, 3.0, 5.0}) {
    for (const double u0 : {0.3, 1.0}) out.push_back({u0, d1, 1.0, 0.0});
  }
  return out;
}

}  // namespace

TEST_SUITE("parallel kernels match their serial twins") {
  TEST_CASE("detuning samples") {
    const fields::N2Config cfg{1.0, 3.0, 1.0, 0.0};
    const auto times = analysis::linspace(0.0, 4.0 * kTwoPi, 10001);
    const auto fn = [&](double t) { return fields::detuning_n2(cfg, t); };
    CHECK(kernels::sample_detuning(fn, times) == kernels::sample_detuning_serial(fn, times));
  }

  TEST_CASE("amplitude samples") {
    const auto sol = closedform::MatchedSolution::n2({2.0, 2.0, 1.0, 0.0}, kGround, 0.0);
    const auto times = analysis::linspace(0.0, 3.0 * kTwoPi, 4001);
    CHECK(kernels::sample_amplitude(sol, times) == kernels::sample_amplitude_serial(sol, times));
  }

  TEST_CASE("Floquet sweep") {
    const auto configs = grid();
    const auto par = kernels::floquet_sweep(configs);
    const auto ser = kernels::floquet_sweep_serial(configs);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
      CHECK(par[i].lambda1 == ser[i].lambda1);
      CHECK(par[i].lambda2 == ser[i].lambda2);
      CHECK(par[i].monodromy_eigs == ser[i].monodromy_eigs);
      CHECK(par[i].residual_mod_drive == ser[i].residual_mod_drive);
    }
  }

  TEST_CASE("comparison sweep") {
    const auto configs = grid();
    const auto par = kernels::compare_sweep(configs, kGround, 2.0, 101);
    const auto ser = kernels::compare_sweep_serial(configs, kGround, 2.0, 101);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
      CHECK(par[i].max_a2_deviation == ser[i].max_a2_deviation);
      CHECK(par[i].max_a1_deviation == ser[i].max_a1_deviation);
      CHECK(par[i].oracle_norm_drift == ser[i].oracle_norm_drift);
    }
  }

  TEST_CASE("empty input") {
    CHECK(kernels::sample_detuning([](double) { return 0.0; }, {}).empty());
    CHECK(kernels::floquet_sweep({}).empty());
  }
}

TEST_SUITE("parallel map") {
  TEST_CASE("exceptions from workers reach the caller") {
    CHECK_THROWS_AS(parallel_map<double>(1000,
                                         [](std::size_t i) {
                                           if (i == 617) throw NumericalError("boom");
                                           return 1.0;
                                         }),
                    NumericalError);
  }

  TEST_CASE("an invalid configuration in a sweep propagates") {
    std::vector<fields::N2Config> configs = grid();
    configs[3].delta1 = 0.5;
    CHECK_THROWS_AS(kernels::floquet_sweep(configs), ParameterError);
  }
}
