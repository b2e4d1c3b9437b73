#include "turandet/oracle.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "turandet/errors.hpp"
#include "turandet/parallel.hpp"

namespace turandet {

double QuadratureRule::max_weight() const {
  return weights.empty() ? 0.0 : *std::max_element(weights.begin(), weights.end());
}

double QuadratureRule::cdf(double lo, double x) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size() && nodes[i] <= x; ++i) {
    if (nodes[i] >= lo) sum += weights[i];
  }
  return sum;
}

namespace {

// Implicit QL with Wilkinson-type shifts on a symmetric tridiagonal matrix. Only row 0 of the
// eigenvector matrix is tracked, which is all a Gauss rule needs.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
  const std::size_t n = d.size();
  const double eps = std::numeric_limits<double>::epsilon();
  const std::size_t max_sweeps = 50 * n;
  std::size_t sweeps = 0;

  for (std::size_t l = 0; l < n; ++l) {
    for (;;) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++sweeps > max_sweeps) {
        throw NumericError(fmt::format("tridiagonal QL did not converge within {} sweeps", max_sweeps));
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool deflated = false;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        const double zf = z[i + 1];
        z[i + 1] = s * z[i] + c * zf;
        z[i] = c * z[i] - s * zf;
      }
      if (deflated) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
}

}  // namespace

QuadratureRule golub_welsch(const CoefficientSequence& seq, std::size_t m) {
  if (m == 0) throw ArgumentError("Gauss rule order must be at least 1");
  std::vector<double> d(m);
  std::vector<double> e(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto c = seq.at(i);
    d[i] = c.b;
    if (i + 1 < m) e[i] = c.a;
  }
  std::vector<double> z(m, 0.0);
  z[0] = 1.0;
  tridiagonal_ql(d, e, z);

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });

  QuadratureRule rule;
  rule.m = m;
  rule.nodes.reserve(m);
  rule.weights.reserve(m);
  for (std::size_t i : order) {
    rule.nodes.push_back(d[i]);
    rule.weights.push_back(z[i] * z[i]);
  }
  return rule;
}

std::vector<double> comparison_points(const QuadratureRule& rule, Interval interval) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < rule.nodes.size(); ++i) {
    const double mid = 0.5 * (rule.nodes[i] + rule.nodes[i + 1]);
    if (mid >= interval.lo && mid <= interval.hi) out.push_back(mid);
  }
  if (out.empty()) out.push_back(interval.hi);
  return out;
}

double cdf_compare(const QuadratureRule& rule, const DensityFn& density, Interval interval,
                   std::size_t points) {
  if (!(interval.lo < interval.hi)) throw ArgumentError("cdf_compare needs a nonempty interval");
  if (points < 2) throw ArgumentError("cdf_compare needs at least 2 grid points");

  const auto grid = linspace(interval.lo, interval.hi, points);
  const auto targets = comparison_points(rule, interval);

  // Every abscissa the Simpson sums touch, evaluated in one parallel sweep.
  std::vector<double> xs;
  xs.reserve(2 * points + 2 * targets.size());
  xs.insert(xs.end(), grid.begin(), grid.end());
  for (std::size_t k = 0; k + 1 < points; ++k) xs.push_back(0.5 * (grid[k] + grid[k + 1]));
  std::vector<std::size_t> panel(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const auto it = std::upper_bound(grid.begin(), grid.end(), targets[t]);
    panel[t] = std::min<std::size_t>(static_cast<std::size_t>(it - grid.begin()), points - 1) - 1;
    xs.push_back(targets[t]);
    xs.push_back(0.5 * (grid[panel[t]] + targets[t]));
  }
  const auto f = sweep(xs, density);
  const auto f_grid = [&](std::size_t k) { return f[k]; };
  const auto f_mid = [&](std::size_t k) { return f[points + k]; };

  std::vector<double> F(points, 0.0);
  for (std::size_t k = 0; k + 1 < points; ++k) {
    const double h = grid[k + 1] - grid[k];
    F[k + 1] = F[k] + h / 6.0 * (f_grid(k) + 4.0 * f_mid(k) + f_grid(k + 1));
  }

  double worst = 0.0;
  const std::size_t base = 2 * points - 1;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const std::size_t k = panel[t];
    const double y = targets[t];
    const double h = y - grid[k];
    const double partial = h / 6.0 * (f_grid(k) + 4.0 * f[base + 2 * t + 1] + f[base + 2 * t]);
    const double F_density = F[k] + partial;
    worst = std::max(worst, std::abs(rule.cdf(interval.lo, y) - F_density));
  }
  return worst;
}

double cdf_compare(const QuadratureRule& rule, const QuadratureRule& other, Interval interval) {
  if (!(interval.lo < interval.hi)) throw ArgumentError("cdf_compare needs a nonempty interval");
  double worst = 0.0;
  for (double y : comparison_points(rule, interval)) {
    worst = std::max(worst, std::abs(rule.cdf(interval.lo, y) - other.cdf(interval.lo, y)));
  }
  return worst;
}

}  // namespace turandet
