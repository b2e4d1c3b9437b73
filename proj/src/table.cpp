#include "turandet/table.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "turandet/errors.hpp"
#include "turandet/parallel.hpp"
#include "turandet/reference.hpp"

namespace turandet {

std::vector<double> GridSpec::points_vector() const { return linspace(xmin, xmax, points); }

GridSpec default_grid(const CoefficientSequence& seq) {
  switch (seq.family()) {
    case Family::GenHermite: return {0.2, 3.0, 512};
    case Family::FreudAsymptotic: return {-2.5, 2.5, 512};
    default: return {-2.0, 2.0, 512};
  }
}

std::vector<std::size_t> standard_truncations() { return {10, 20, 40, 60, 80, 100}; }

ErrorRow relative_error_row(const CoefficientSequence& seq, EstimatorKind kind, std::size_t N,
                            std::span<const std::size_t> ns, std::span<const double> grid,
                            std::string label) {
  if (ns.empty()) throw ArgumentError("error table needs a nonempty list of truncation indices");
  const auto ref = ReferenceDensity::for_sequence(seq);
  if (!ref) {
    throw UnsupportedError(fmt::format("{} has no closed-form reference density", seq.describe()));
  }
  const auto all = sweep(grid, [&](double x) {
    try {
      return (*ref)(x);
    } catch (const DomainError&) {
      return 0.0;  // singular point of |x|^t with t < 0
    }
  });
  std::vector<double> xs, reference;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (all[i] < kReferenceFloor) continue;
    xs.push_back(grid[i]);
    reference.push_back(all[i]);
  }

  ErrorRow row;
  row.label = label.empty() ? seq.describe() : std::move(label);
  row.N = N;
  row.kind = kind;
  auto est = make_estimator(seq, kind, N, ns.front());
  for (std::size_t n : ns) {
    est.n = n;
    const auto values = estimate_on_grid(seq, est, xs);
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      worst = std::max(worst, std::abs(values[i] - reference[i]) / reference[i]);
    }
    row.cells.push_back(worst);
  }
  return row;
}

ErrorTable relative_error_table(const CoefficientSequence& seq, EstimatorKind kind, std::size_t N,
                                std::span<const std::size_t> ns, const GridSpec& grid) {
  const auto xs = grid.points_vector();
  ErrorTable table;
  table.ns.assign(ns.begin(), ns.end());
  table.rows.push_back(relative_error_row(seq, kind, N, ns, xs));
  return table;
}

ErrorTable hermite_error_table(std::span<const std::size_t> ns, const GridSpec& grid) {
  const auto xs = grid.points_vector();
  ErrorTable table;
  table.ns.assign(ns.begin(), ns.end());
  const auto add = [&](double t, EstimatorKind kind, std::size_t N, std::string label) {
    table.rows.push_back(
        relative_error_row(CoefficientSequence::gen_hermite(t), kind, N, ns, xs, std::move(label)));
  };
  add(-0.5, EstimatorKind::Critical, 2, "t=-0.5");
  add(0.0, EstimatorKind::Regular, 1, "t=0.0 (N=1)");
  add(0.0, EstimatorKind::Critical, 2, "t=0.0");
  add(0.5, EstimatorKind::Critical, 2, "t=0.5");
  add(1.0, EstimatorKind::Critical, 2, "t=1.0");
  return table;
}

ErrorTable mp_error_table(std::span<const std::size_t> ns, const GridSpec& grid) {
  const auto xs = grid.points_vector();
  constexpr double pi = std::numbers::pi;
  ErrorTable table;
  table.ns.assign(ns.begin(), ns.end());
  const auto add = [&](double lambda, double phi, std::string label) {
    table.rows.push_back(relative_error_row(CoefficientSequence::meixner_pollaczek(lambda, phi),
                                            EstimatorKind::Regular, 1, ns, xs, std::move(label)));
  };
  add(0.5, pi / 4, "lambda=0.5,phi=pi/4");
  add(0.5, pi / 3, "lambda=0.5,phi=pi/3");
  add(0.5, pi / 2, "lambda=0.5,phi=pi/2");
  add(1.0, pi / 2, "lambda=1.0,phi=pi/2");
  return table;
}

}  // namespace turandet
