#include "turandet/estimator.hpp"

#include <fmt/format.h>

#include "turandet/christoffel.hpp"
#include "turandet/errors.hpp"
#include "turandet/parallel.hpp"

namespace turandet {

std::string_view estimator_name(EstimatorKind k) {
  switch (k) {
    case EstimatorKind::Regular: return "regular";
    case EstimatorKind::Critical: return "critical";
    case EstimatorKind::Christoffel: return "christoffel";
    case EstimatorKind::Pair: return "pair";
  }
  return "?";
}

double Estimator::operator()(const CoefficientSequence& seq, double x) const {
  switch (kind) {
    case EstimatorKind::Regular:
      if (!limits) throw ArgumentError("regular estimator needs limit data");
      return density_regular(seq, N, x, n, *limits).value;
    case EstimatorKind::Critical:
      if (!limits) throw ArgumentError("critical estimator needs limit data");
      return density_critical(seq, N, x, n, *limits).value;
    case EstimatorKind::Christoffel: return christoffel_density(seq, n, x);
    case EstimatorKind::Pair: return pair_density(seq, n, x);
  }
  return 0.0;
}

Window default_limit_window(const CoefficientSequence& seq, std::size_t N) {
  if (const auto size = seq.size()) {
    const std::size_t hi = *size - 1;
    const std::size_t lo = std::max<std::size_t>(1, hi / 2);
    if (hi < lo || hi - lo < 4 * N) {
      throw ArgumentError(fmt::format(
          "custom table of length {} is too short to estimate limits for N = {}", *size, N));
    }
    return {lo, hi};
  }
  return {500, 1000};
}

LimitData resolve_limits(const CoefficientSequence& seq, std::size_t N, Mode mode) {
  if (auto known = analytic_limits(seq, N, mode)) return *known;
  return estimate_limits(seq, N, mode, std::nullopt, default_limit_window(seq, N)).limits;
}

Mode auto_mode(const CoefficientSequence& seq, std::size_t N) {
  const auto regular = resolve_limits(seq, N, Mode::Regular);
  return discr_regular_limit(regular).discr < 0.0 ? Mode::Regular : Mode::Critical;
}

Estimator make_estimator(const CoefficientSequence& seq, EstimatorKind kind, std::size_t N, std::size_t n) {
  Estimator est{kind, N, n, std::nullopt};
  if (kind == EstimatorKind::Regular) est.limits = resolve_limits(seq, N, Mode::Regular);
  if (kind == EstimatorKind::Critical) est.limits = resolve_limits(seq, N, Mode::Critical);
  return est;
}

std::vector<double> estimate_on_grid(const CoefficientSequence& seq, const Estimator& est,
                                     std::span<const double> xs) {
  return sweep(xs, [&](double x) { return est(seq, x); });
}

std::vector<double> estimate_on_grid_serial(const CoefficientSequence& seq, const Estimator& est,
                                            std::span<const double> xs) {
  return sweep_serial(xs, [&](double x) { return est(seq, x); });
}

}  // namespace turandet
