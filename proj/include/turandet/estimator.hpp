#pragma once

// Pointwise density estimators behind one interface, and their grid kernels.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "turandet/sequences.hpp"
#include "turandet/turan.hpp"

namespace turandet {

enum class EstimatorKind { Regular, Critical, Christoffel, Pair };

std::string_view estimator_name(EstimatorKind k);

struct Estimator {
  EstimatorKind kind = EstimatorKind::Regular;
  std::size_t N = 1;
  std::size_t n = 100;
  std::optional<LimitData> limits;  // required for Regular and Critical

  double operator()(const CoefficientSequence& seq, double x) const;
};

/// Window used when limits must be estimated from the coefficients: [500, 1000] for closed-form
/// families, the second half of a custom table otherwise.
Window default_limit_window(const CoefficientSequence& seq, std::size_t N);

/// Closed-form limits when known, otherwise estimate_limits over default_limit_window.
LimitData resolve_limits(const CoefficientSequence& seq, std::size_t N, Mode mode);

/// Regular if the regular limit matrix has negative discriminant, critical otherwise.
Mode auto_mode(const CoefficientSequence& seq, std::size_t N);

/// Fills in limits for the Turán estimators.
Estimator make_estimator(const CoefficientSequence& seq, EstimatorKind kind, std::size_t N, std::size_t n);

/// OpenMP kernel over grid points.
std::vector<double> estimate_on_grid(const CoefficientSequence& seq, const Estimator& est,
                                     std::span<const double> xs);

/// Serial reference of estimate_on_grid; results are bit-identical.
std::vector<double> estimate_on_grid_serial(const CoefficientSequence& seq, const Estimator& est,
                                            std::span<const double> xs);

}  // namespace turandet
