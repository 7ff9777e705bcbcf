#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace orthobound::grid {

// Serial reference for map_parallel; kept separate so tests can assert the
// parallel path is bit-identical.
template <typename Fn>
std::vector<double> map_serial(std::size_t count, Fn&& fn) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
  return out;
}

// Evaluates fn(i) for i in [0, count) with OpenMP when available. Static
// schedule, one result slot per index, no reductions: the outputs are
// bit-identical to map_serial regardless of thread count.
template <typename Fn>
std::vector<double> map_parallel(std::size_t count, Fn&& fn) {
  std::vector<double> out(count);
  std::exception_ptr err = nullptr;
  const long long c = static_cast<long long>(count);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < c; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      {
        if (!err) err = std::current_exception();
      }
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace orthobound::grid
