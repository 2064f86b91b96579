#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "heuncross/specfun.hpp"
#include "support.hpp"

using namespace heuncross;
using namespace heuncross::specfun;
using heuncross::testing::rel_err;
using heuncross::testing::uniform;

namespace {

// ∫_0^x t^{p-1}(1-t)^{q-1} dt for real 0 < x < 1, p > 0.
double beta_quadrature(double p, double q, double x) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate([&](double t) { return std::pow(t, p - 1.0) * std::pow(1.0 - t, q - 1.0); },
                              0.0, x);
}

// Euler integral for 2F1 with real parameters, c > b > 0, real z < 1.
double hyp2f1_euler(double a, double b, double c, double z) {
  using boost::math::tgamma;
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double integral = integrator.integrate(
      // tc is the distance to the nearer endpoint, which keeps 1 - t exact near t = 1.
      [&](double t, double tc) {
        const double one_minus_t = t > 0.5 ? tc : 1.0 - t;
        return std::pow(t, b - 1.0) * std::pow(one_minus_t, c - b - 1.0) * std::pow(1.0 - z * t, -a);
      },
      0.0, 1.0);
  return tgamma(c) / (tgamma(b) * tgamma(c - b)) * integral;
}

}  // namespace

TEST_SUITE("hyp2f1") {
  TEST_CASE("value at the origin is one") {
    CHECK(std::abs(hyp2f1({0.3, 0.1}, 2.5, 1.7, 0.0) - cplx(1.0)) == 0.0);
  }

  TEST_CASE("logarithm case") {
    const double z = 0.3;
    const double want = -std::log(1.0 - z) / z;  // 1.18892...
    CHECK(std::abs(hyp2f1(1.0, 1.0, 2.0, z) - want) <= 1e-15);
    CHECK(want == doctest::Approx(1.18892).epsilon(1e-5));
  }

  TEST_CASE("zero numerator parameter kills the series") {
    CHECK(std::abs(hyp2f1({2.3, -1.0}, 0.0, 3.1, {0.4, 0.5}) - cplx(1.0)) == 0.0);
  }

  TEST_CASE("agrees with the Euler integral") {
    for (int k = 0; k < 20; ++k) {
      const double a = uniform(-2.0, 2.0);
      const double b = uniform(0.2, 2.0);
      const double c = b + uniform(0.2, 2.0);
      const double z = uniform(-0.8, 0.8);
      const double want = hyp2f1_euler(a, b, c, z);
      CHECK(rel_err(hyp2f1(a, b, c, z), want) <= 1e-12);
    }
  }

  TEST_CASE("rejects the unit disc boundary and poles") {
    CHECK_THROWS_AS(hyp2f1(1.0, 1.0, 2.0, 1.0), DomainError);
    CHECK_THROWS_AS(hyp2f1(1.0, 1.0, 2.0, {0.0, 1.5}), DomainError);
    CHECK_THROWS_AS(hyp2f1(1.0, 1.0, -2.0, 0.3), ParameterError);
  }
}

TEST_SUITE("incomplete beta") {
  TEST_CASE("constant integrand") {
    for (const cplx z : {cplx(0.3, 0.0), cplx(-0.2, 0.5), cplx(0.1, -0.6)}) {
      CHECK(std::abs(inc_beta(1.0, 1.0, z) - z) <= 1e-15);
    }
  }

  TEST_CASE("double pole integrand") {
    for (const cplx z : {cplx(0.3, 0.0), cplx(-0.2, 0.5), cplx(0.6, -0.3)}) {
      CHECK(rel_err(inc_beta(1.0, -1.0, z), z / (1.0 - z)) <= 1e-13);
    }
  }

  TEST_CASE("p = 2, q = -1 at one half matches quadrature") {
    // ∫_0^{1/2} t(1-t)^{-2} dt = 1 - ln 2
    const double want = beta_quadrature(2.0, -1.0, 0.5);
    CHECK(std::abs(want - (1.0 - std::log(2.0))) <= 1e-14);
    CHECK(std::abs(inc_beta(2.0, -1.0, 0.5) - want) <= 1e-14);
  }

  TEST_CASE("real parameters match quadrature") {
    for (int k = 0; k < 30; ++k) {
      const double p = uniform(0.3, 4.0);
      const double q = uniform(-2.5, 3.0);
      const double x = uniform(0.05, 0.9);
      CHECK(rel_err(inc_beta(p, q, x), beta_quadrature(p, q, x)) <= 1e-11);
    }
  }

  TEST_CASE("unwound argument follows the path") {
    // Going once round the origin multiplies z^p by e^{2πip}.
    const double p = 0.37;
    const UnwoundPoint once(0.5, 0.4);
    const UnwoundPoint twice(0.5, 0.4 + kTwoPi);
    const cplx ratio = inc_beta(p, 1.3, twice) / inc_beta(p, 1.3, once);
    CHECK(std::abs(ratio - std::polar(1.0, kTwoPi * p)) <= 1e-13);
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(inc_beta(-2.0, 1.0, 0.3), ParameterError);
    CHECK_THROWS_AS(inc_beta(1.5, 1.0, 1.2), DomainError);
    CHECK(inc_beta(1.5, 1.0, 0.0) == cplx(0.0));
  }
}

TEST_SUITE("neighbour recurrence") {
  TEST_CASE("vanishing recursive term extends off the disc") {
    for (const cplx z : {cplx(0.4, 0.0), cplx(2.0, 1.0), cplx(-3.0, 0.2)}) {
      CHECK(rel_err(beta_step(1.0, -1.0, z), z / (1.0 - z)) <= 1e-14);
    }
  }

  TEST_CASE("matches inc_beta for (2, -1)") {
    CHECK(rel_err(beta_step(2.0, -1.0, 0.4), inc_beta(2.0, -1.0, 0.4)) <= 1e-13);
  }

  TEST_CASE("matches quadrature for positive parameters") {
    for (int k = 0; k < 20; ++k) {
      const double c = uniform(0.3, 3.0);
      const double b = uniform(0.3, 3.0);
      CHECK(rel_err(beta_step(c, b, 0.5), beta_quadrature(c, b, 0.5)) <= 1e-12);
    }
  }

  TEST_CASE("identity holds for random complex triples") {
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const cplx c(uniform(0.2, 4.0), uniform(-1.0, 1.0));
      const cplx b(uniform(-3.0, 3.0), uniform(-1.0, 1.0));
      const cplx z = std::polar(uniform(0.05, 0.7), uniform(-3.0, 3.0));
      const cplx lhs = inc_beta(c, b, z);
      const cplx rhs = std::exp(c * std::log(z)) / c * std::pow(1.0 - z, b) +
                       (b + c) / c * inc_beta(c + 1.0, b, z);
      worst = std::max(worst, rel_err(lhs, rhs));
    }
    CHECK(worst <= 1e-11);
  }

  TEST_CASE("folding a sum reproduces term-by-term evaluation") {
    const std::vector<cplx> coeffs{1.0, {0.3, -0.2}, {-1.1, 0.4}, {0.05, 0.0}};
    const cplx p0(1.7, 0.0);
    const cplx b(0.6, 0.0);
    const UnwoundPoint z(0.6, 1.1);
    cplx direct{0.0};
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
      direct += coeffs[n] * inc_beta(p0 + static_cast<double>(n), b, z);
    }
    const auto fold = fold_beta_sum(p0, b, coeffs, z);
    CHECK(rel_err(fold_value(fold, b, z), direct) <= 1e-13);
  }
}

TEST_SUITE("unwound powers") {
  TEST_CASE("unit modulus at zero angle") {
    CHECK(std::abs(unwound_power(UnwoundPoint(1.0, 0.0), {2.7, -0.4}) - cplx(1.0)) <= 1e-15);
  }

  TEST_CASE("one full turn is not the identity") {
    CHECK(std::abs(unwound_power(UnwoundPoint(1.0, kTwoPi), 0.5) - cplx(-1.0)) <= 1e-15);
  }

  TEST_CASE("constant modulus and linear phase") {
    const double mu = 1.0 + std::sqrt(2.0);  // (Δ₁+R)/2 at Δ₁ = 2, U₀ = 1
    const double modulus = std::pow(std::sqrt(3.0), mu);
    for (int k = 0; k <= 40; ++k) {
      const double t = 0.5 * k;
      const cplx w = unwound_power(UnwoundPoint(std::sqrt(3.0), t), mu);
      CHECK(std::abs(std::abs(w) - modulus) <= 1e-13 * modulus);
      CHECK(std::abs(w - std::polar(modulus, mu * t)) <= 1e-12 * modulus);
    }
  }

  TEST_CASE("the origin is rejected") { CHECK_THROWS_AS(UnwoundPoint(0.0, 1.0), DomainError); }
}
