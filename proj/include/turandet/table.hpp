#pragma once

// Maximal relative error of a density estimator against a closed-form weight, by truncation index.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "turandet/estimator.hpp"
#include "turandet/sequences.hpp"
#include "turandet/turan.hpp"

namespace turandet {

/// Grid points whose reference value is below this are dropped before estimating: relative error
/// means nothing at density zeros.
inline constexpr double kReferenceFloor = 1e-12;

struct GridSpec {
  double xmin = -2.0;
  double xmax = 2.0;
  std::size_t points = 512;

  std::vector<double> points_vector() const;
};

/// [0.2, 3.0] for genhermite (parity covers the negative half and avoids the t ≠ 0 singularity),
/// [-2, 2] for Meixner–Pollaczek, [-2.5, 2.5] for freudasymptotic, [-2, 2] otherwise; 512 points.
GridSpec default_grid(const CoefficientSequence& seq);

struct ErrorRow {
  std::string label;
  std::size_t N = 1;
  EstimatorKind kind = EstimatorKind::Regular;
  std::vector<double> cells;  // one per n, nonnegative
};

struct ErrorTable {
  std::vector<std::size_t> ns;
  std::vector<ErrorRow> rows;
};

/// max over the grid of |estimate - reference| / reference, one cell per n.
/// UnsupportedError for families without a reference, ArgumentError for an empty n list.
ErrorRow relative_error_row(const CoefficientSequence& seq, EstimatorKind kind, std::size_t N,
                            std::span<const std::size_t> ns, std::span<const double> grid,
                            std::string label = {});

ErrorTable relative_error_table(const CoefficientSequence& seq, EstimatorKind kind, std::size_t N,
                                std::span<const std::size_t> ns, const GridSpec& grid);

/// Generalized Hermite rows t ∈ {-0.5, 0 (N = 1, regular), 0, 0.5, 1}, critical N = 2 unless noted.
ErrorTable hermite_error_table(std::span<const std::size_t> ns, const GridSpec& grid);

/// Meixner–Pollaczek rows (λ, φ) ∈ {(½, π/4), (½, π/3), (½, π/2), (1, π/2)}, regular N = 1.
ErrorTable mp_error_table(std::span<const std::size_t> ns, const GridSpec& grid);

/// n = 10, 20, 40, 60, 80, 100.
std::vector<std::size_t> standard_truncations();

}  // namespace turandet
