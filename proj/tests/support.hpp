#pragma once

// Shared helpers for the test suites.

#include <algorithm>
#include <cmath>
#include <random>

#include "heuncross/common.hpp"

namespace heuncross::testing {

inline double rel_err(cplx got, cplx want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

/// Fixed-seed generator so every run sees the same points.
inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240601);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

/// Five-point central first and second derivatives of f at x.
template <class F>
auto fd_first(const F& f, double x, double h) {
  return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
}

template <class F>
auto fd_second(const F& f, double x, double h) {
  return (-f(x - 2 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2 * h)) /
         (12.0 * h * h);
}

}  // namespace heuncross::testing
