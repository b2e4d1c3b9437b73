#pragma once

// Independent ground truth for the density estimators: the m-point Gauss rule of μ from the
// truncated Jacobi matrix, compared through cumulative distribution functions.

#include <cstddef>
#include <functional>
#include <vector>

#include "turandet/sequences.hpp"
#include "turandet/turan.hpp"

namespace turandet {

struct QuadratureRule {
  std::size_t m = 0;
  std::vector<double> nodes;    // strictly increasing
  std::vector<double> weights;  // positive, sum to 1

  double max_weight() const;
  /// Σ w_j over lo ≤ x_j ≤ x.
  double cdf(double lo, double x) const;
};

/// Nodes are the eigenvalues of the m×m Jacobi matrix (diagonal b_0..b_{m-1}, off-diagonal
/// a_0..a_{m-2}); weights are the squared first components of the normalized eigenvectors.
/// Eigenvalues come from implicit-shift QL; NumericError after 50m sweeps without convergence.
QuadratureRule golub_welsch(const CoefficientSequence& seq, std::size_t m);

using DensityFn = std::function<double(double)>;

/// Sup-discrepancy between the rule's weight step function and the running integral of
/// `density`, both started at lo.
///
/// The density CDF is a composite Simpson integral on `points` uniform nodes of [lo, hi] (each
/// panel uses its midpoint). The two CDFs are compared at the midpoints between consecutive
/// Gauss nodes inside [lo, hi]: there the step function is flat and equals the Gauss
/// approximation of the CDF, while next to a jump it is only determined up to the local weight.
/// With no gap midpoint inside the interval the comparison is made at hi.
double cdf_compare(const QuadratureRule& rule, const DensityFn& density, Interval interval,
                   std::size_t points);

/// Step function against step function at the gap midpoints of `rule`.
double cdf_compare(const QuadratureRule& rule, const QuadratureRule& other, Interval interval);

/// Gap midpoints of `rule` inside [lo, hi]: the points where cdf_compare evaluates.
std::vector<double> comparison_points(const QuadratureRule& rule, Interval interval);

}  // namespace turandet
