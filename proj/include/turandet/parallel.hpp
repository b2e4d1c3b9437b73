#pragma once

// Data-parallel evaluation of pure pointwise functions over a grid.
//
// sweep() distributes grid points over OpenMP threads; sweep_serial() is the reference loop the
// tests compare it against. Both produce bit-identical results because each output slot is
// written by exactly one evaluation. An exception thrown at any point is rethrown after the
// loop; when several points fail, the one with the lowest index wins, so error reporting does
// not depend on scheduling.

#include <cstddef>
#include <exception>
#include <span>
#include <vector>

#include "turandet/errors.hpp"

namespace turandet {

/// `points` uniformly spaced values from lo to hi inclusive; the last value is exactly hi.
inline std::vector<double> linspace(double lo, double hi, std::size_t points) {
  if (points < 2) throw ArgumentError("a grid needs at least 2 points");
  if (!(lo < hi)) throw ArgumentError("a grid needs lo < hi");
  std::vector<double> xs(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t k = 0; k + 1 < points; ++k) xs[k] = lo + step * static_cast<double>(k);
  xs.back() = hi;
  return xs;
}

template <typename F>
std::vector<double> sweep_serial(std::span<const double> xs, F&& f) {
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
  return out;
}

template <typename F>
std::vector<double> sweep(std::span<const double> xs, F&& f) {
  const auto count = static_cast<std::ptrdiff_t>(xs.size());
  std::vector<double> out(xs.size());
  std::vector<std::exception_ptr> errors(xs.size());
  bool failed = false;
#pragma omp parallel for schedule(dynamic, 8) reduction(|| : failed)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      out[k] = f(xs[k]);
    } catch (...) {
      errors[k] = std::current_exception();
      failed = true;
    }
  }
  if (failed) {
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  return out;
}

template <typename F>
std::vector<double> sweep(const std::vector<double>& xs, F&& f) {
  return sweep(std::span<const double>(xs), std::forward<F>(f));
}

template <typename F>
std::vector<double> sweep_serial(const std::vector<double>& xs, F&& f) {
  return sweep_serial(std::span<const double>(xs), std::forward<F>(f));
}

}  // namespace turandet
