#include "turandet/recurrence.hpp"

#include <fmt/format.h>

#include <cmath>

#include "turandet/errors.hpp"

namespace turandet {

const PolyPair& RecurrenceStepper::advance() {
  const std::size_t n = pair_.n;
  const auto c = seq_->at(n);
  // Division rather than multiplication by 1/a_n keeps exact cancellations exact.
  const double next = ((pair_.x - c.b) * pair_.hi - a_prev_ * pair_.lo) / c.a;
  if (!std::isfinite(next) || std::abs(next) > kOverflowLimit) {
    throw OverflowError(
        fmt::format("recurrence overflow at x = {}: p_{} is not representable", pair_.x, n + 1), n);
  }
  pair_.lo = pair_.hi;
  pair_.hi = next;
  pair_.n = n + 1;
  a_prev_ = c.a;
  return pair_;
}

Mat2 transfer_matrix(const CoefficientSequence& seq, std::size_t n, double x) {
  const auto c = seq.at(n);
  const double a_prev = (n == 0) ? 1.0 : seq.a(n - 1);
  return Mat2::of(0.0, 1.0, -a_prev / c.a, (x - c.b) / c.a);
}

Mat2 transfer_product(const CoefficientSequence& seq, std::size_t n, std::size_t N, double x) {
  Mat2 acc = Mat2::identity();
  for (std::size_t j = n; j < n + N; ++j) acc = transfer_matrix(seq, j, x) * acc;
  return acc;
}

PolyPair eval_pair(const CoefficientSequence& seq, double x, std::size_t n) {
  RecurrenceStepper step(seq, x);
  while (step.current().n < n) step.advance();
  return step.current();
}

std::vector<PolyPair> eval_stream(const CoefficientSequence& seq, double x, std::size_t n_max) {
  std::vector<PolyPair> out;
  out.reserve(n_max + 1);
  RecurrenceStepper step(seq, x);
  out.push_back(step.current());
  while (step.current().n < n_max) out.push_back(step.advance());
  return out;
}

}  // namespace turandet
