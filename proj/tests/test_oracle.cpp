#include <cmath>

#include "doctest.h"
#include "heuncross/closedform.hpp"
#include "heuncross/oracle.hpp"
#include "support.hpp"

using namespace heuncross;
using namespace heuncross::oracle;

namespace {

const StateVector kGround{{1.0, 0.0}, {0.0, 0.0}, 0.0};

Options tight() {
  Options o;
  o.rtol = 1e-12;
  o.atol = 1e-14;
  return o;
}

// Worst deviation from the constant-detuning population formula over [0, t_end].
double rabi_error(double u0, double d1, double t_end, const Options& opts) {
  const fields::FieldConfig cfg{u0, 2.0, d1, 0.0, 1.0, 0.0};
  const double r = closedform::generalized_rabi(u0, d1);
  std::vector<double> times;
  for (int k = 1; k <= 500; ++k) times.push_back(t_end * k / 500.0);
  const auto traj = integrate_at(make_field(cfg), kGround, 0.0, times, opts);
  double worst = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double s = std::sin(0.5 * r * times[i]);
    const double want = 4.0 * u0 * u0 / (r * r) * s * s;
    worst = std::max(worst, std::abs(std::norm(traj.states[i].a2) - want));
  }
  return worst;
}

}  // namespace

TEST_SUITE("integration") {
  TEST_CASE("no coupling keeps populations") {
    const Field field{[](double) { return 0.0; }, [](double t) { return 1.0 + std::cos(t); }};
    const StateVector s0{{0.6, 0.0}, {0.0, 0.8}, 0.0};
    const auto traj = integrate(field, s0, 0.0, 20.0);
    for (const auto& s : traj.states) {
      CHECK(std::abs(std::norm(s.a2) - 0.64) <= 1e-12);
      CHECK(std::abs(std::norm(s.a1) - 0.36) <= 1e-12);
    }
  }

  TEST_CASE("constant detuning reproduces the Rabi formula") {
    for (const auto& [u0, d1] : {std::pair{1.0, 0.0}, std::pair{0.5, 2.0}, std::pair{2.0, -1.5}}) {
      CHECK(rabi_error(u0, d1, 10.0 * kTwoPi, tight()) <= 1e-9);
    }
  }

  TEST_CASE("tightening the tolerance reduces the error") {
    Options loose;
    loose.rtol = 1e-6;
    loose.atol = 1e-8;
    Options mid;
    mid.rtol = 1e-9;
    mid.atol = 1e-11;
    const double e_loose = rabi_error(1.0, 0.5, 4.0 * kTwoPi, loose);
    const double e_mid = rabi_error(1.0, 0.5, 4.0 * kTwoPi, mid);
    const double e_tight = rabi_error(1.0, 0.5, 4.0 * kTwoPi, tight());
    CHECK(e_mid < e_loose);
    CHECK(e_tight < e_mid);
    // A fifth-order controller gains roughly two decades per three of tolerance.
    CHECK(e_loose / e_mid > 10.0);
  }

  TEST_CASE("norm drift on the two-parameter model") {
    const auto traj = integrate(make_field(fields::N2Config{1.0, 2.0, 1.0, 0.0}), kGround, 0.0,
                                5.0 * kTwoPi, tight());
    CHECK(traj.norm_drift <= 1e-10);
  }

  TEST_CASE("norm drift within 100 rtol over ten periods for every family") {
    Options opts;
    const std::vector<Field> families{
        make_field(fields::FieldConfig{1.0, 16.0, -25.0 / 16.0, -15.0 / 16.0, 1.0, 0.0}),
        make_field(fields::N2Config{2.0, 3.0, 1.0, 0.0}), make_n3_field(1.0, -2.0, Branch::plus)};
    for (const auto& f : families) {
      CHECK(integrate(f, kGround, 0.0, 10.0 * kTwoPi, opts).norm_drift <= 100.0 * opts.rtol);
    }
  }

  TEST_CASE("forward then backward returns the initial state") {
    const auto field = make_field(fields::N2Config{1.0, 2.0, 1.0, 0.0});
    const auto fwd = integrate(field, kGround, 0.0, kTwoPi, tight());
    const auto back = integrate(field, fwd.states.back(), kTwoPi, 0.0, tight());
    const auto& s = back.states.back();
    CHECK(back.times.back() == 0.0);
    CHECK(std::abs(s.a1 - kGround.a1) <= 1e-8);
    CHECK(std::abs(s.a2 - kGround.a2) <= 1e-8);
    CHECK(std::abs(s.phase) <= 1e-8);
  }

  TEST_CASE("times are strictly increasing") {
    const auto traj = integrate(make_field(fields::N2Config{}), kGround, 0.0, 3.0);
    for (std::size_t i = 1; i < traj.times.size(); ++i) CHECK(traj.times[i] > traj.times[i - 1]);
    CHECK(traj.times.back() == 3.0);
  }

  TEST_CASE("errors") {
    const auto field = make_field(fields::N2Config{});
    Options bad;
    bad.rtol = 1e-14;
    CHECK_THROWS_AS(integrate(field, kGround, 0.0, 1.0, bad), ParameterError);
    Options capped;
    capped.max_steps = 5;
    CHECK_THROWS_AS(integrate(field, kGround, 0.0, 100.0, capped), NumericalError);
    CHECK_THROWS_AS(integrate_at(field, kGround, 0.0, std::vector<double>{1.0, -1.0}), ParameterError);
  }
}

TEST_SUITE("monodromy") {
  TEST_CASE("exponents of the worked example") {
    const auto m = monodromy(make_field(fields::N2Config{1.0, 2.0, 1.0, 0.0}), 0.0, kTwoPi, tight());
    const double s2 = std::sqrt(2.0);
    const double want[2] = {std::fmod(1.0 - s2 + 1.0, 1.0), std::fmod(1.0 + s2, 1.0)};  // 0.58579, 0.41421
    CHECK(want[0] == doctest::Approx(0.58579).epsilon(1e-5));
    CHECK(want[1] == doctest::Approx(0.41421).epsilon(1e-5));
    const double straight = std::max(exponent_distance(m.exponents[0], want[0], 1.0),
                                     exponent_distance(m.exponents[1], want[1], 1.0));
    const double crossed = std::max(exponent_distance(m.exponents[0], want[1], 1.0),
                                    exponent_distance(m.exponents[1], want[0], 1.0));
    CHECK(std::min(straight, crossed) <= 1e-9);
    CHECK(m.unit_circle_deviation <= 1e-9);
  }

  TEST_CASE("weak coupling is degenerate at zero") {
    const auto m = monodromy(make_field(fields::N2Config{1e-8, 2.0, 1.0, 0.0}), 0.0, kTwoPi, tight());
    CHECK(exponent_distance(m.exponents[0], 0.0, 1.0) <= 1e-7);
    CHECK(exponent_distance(m.exponents[1], 0.0, 1.0) <= 1e-7);
  }

  TEST_CASE("eigenvalues on the unit circle for every family") {
    const std::vector<Field> families{
        make_field(fields::FieldConfig{1.0, 16.0, -25.0 / 16.0, -15.0 / 16.0, 1.0, 0.0}),
        make_field(fields::FieldConfig{0.7, 0.4, 0.3, 1.1, 1.0, 0.5}),
        make_field(fields::N2Config{3.5, 5.0, 1.0, 0.0}), make_n3_field(1.0, -2.0, Branch::plus)};
    for (const auto& f : families) CHECK(monodromy(f, 0.0, kTwoPi, tight()).unit_circle_deviation <= 1e-9);
  }

  TEST_CASE("exponents do not depend on the reference time") {
    const auto field = make_field(fields::N2Config{2.0, 3.0, 1.0, 0.0});
    const auto base = monodromy(field, 0.0, kTwoPi, tight());
    for (const double t_ref : {0.7, 2.0, 4.4}) {
      const auto m = monodromy(field, t_ref, kTwoPi, tight());
      const double straight = std::max(exponent_distance(m.exponents[0], base.exponents[0], 1.0),
                                       exponent_distance(m.exponents[1], base.exponents[1], 1.0));
      const double crossed = std::max(exponent_distance(m.exponents[0], base.exponents[1], 1.0),
                                      exponent_distance(m.exponents[1], base.exponents[0], 1.0));
      CHECK(std::min(straight, crossed) <= 1e-9);
    }
  }

  TEST_CASE("wrapping") {
    CHECK(wrap_exponent(0.75, 1.0) == doctest::Approx(-0.25));
    CHECK(wrap_exponent(-0.5, 1.0) == doctest::Approx(-0.5));
    CHECK(wrap_exponent(0.5, 1.0) == doctest::Approx(-0.5));
    CHECK(exponent_distance(0.49, -0.49, 1.0) == doctest::Approx(0.02));
  }
}

TEST_SUITE("mean detuning") {
  TEST_CASE("two-parameter model") {
    for (const double d1 : {4.0 / 3.0, 2.0, 3.0, 5.0}) {
      const fields::N2Config cfg{1.0, d1, 1.0, 0.0};
      CHECK(std::abs(mean_detuning(make_field(cfg), kTwoPi) - (d1 - 2.0)) <= 1e-10);
    }
  }

  TEST_CASE("constant detuning") {
    CHECK(mean_detuning(make_field(fields::FieldConfig{1.0, 3.0, 0.8, 0.0, 1.0, 0.0}), kTwoPi) ==
          doctest::Approx(0.8).epsilon(1e-14));
  }

  TEST_CASE("general family") {
    // (1/2π)∫ dθ/(1+a-2√a cos θ) = 1/|1-a|, so the mean is Δ₁ - sgn(a-1)Δ₂.
    const fields::FieldConfig cfg{1.0, 16.0, -25.0 / 16.0, -15.0 / 16.0, 1.0, 0.0};
    CHECK(std::abs(mean_detuning(make_field(cfg), kTwoPi) - (-0.625)) <= 1e-10);
    const fields::FieldConfig low{1.0, 0.25, 0.3, 1.2, 2.0, 0.4};
    CHECK(std::abs(mean_detuning(make_field(low), low.period(), 0.4) - 1.5) <= 1e-10);
  }
}
