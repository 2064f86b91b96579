#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace heuncross {

/// out[i] = fn(i) for i in [0, n), OpenMP-parallel over i. The first exception
/// thrown by any iteration is rethrown on the calling thread.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  std::exception_ptr failure;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < count; ++i) {
    try {
      out[i] = fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(heuncross_parallel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

template <class T, class Fn>
std::vector<T> serial_map(std::size_t n, Fn&& fn) {
  std::vector<T> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
  return out;
}

}  // namespace heuncross
