#include "turandet/christoffel.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

#include "turandet/errors.hpp"
#include "turandet/recurrence.hpp"

namespace turandet {

ChristoffelValue christoffel_lambda(const CoefficientSequence& seq, std::size_t n, double x) {
  RecurrenceStepper step(seq, x);
  double sum_p2 = 1.0;  // p_0^2
  double sum_inv_a = 1.0 / seq.a(0);
  while (step.current().n < n) {
    const double p = step.advance().hi;
    sum_p2 += p * p;
    sum_inv_a += 1.0 / seq.a(step.current().n);
    if (!std::isfinite(sum_p2)) {
      throw OverflowError(fmt::format("sum of p_k^2 overflows at x = {}", x), step.current().n - 1);
    }
  }
  return {x, n, 1.0 / sum_p2, sum_inv_a};
}

double christoffel_density(const CoefficientSequence& seq, std::size_t n, double x) {
  if (n < 1) throw ArgumentError("christoffel_density requires n >= 1");
  const auto c = christoffel_lambda(seq, n, x);
  return c.lambda * c.inv_a_sum / (2.0 * std::numbers::pi);
}

double pair_density(const CoefficientSequence& seq, std::size_t n, double x) {
  if (n < 1) throw ArgumentError("pair_density requires n >= 1");
  const auto pair = eval_pair(seq, x, n);
  return 1.0 / (std::numbers::pi * seq.a(n) * (pair.lo * pair.lo + pair.hi * pair.hi));
}

}  // namespace turandet
