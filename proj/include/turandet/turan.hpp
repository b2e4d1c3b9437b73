#pragma once

// N-shifted Turán determinants
//
//   D^N_n(x) = p_n(x) p_{n+N-1}(x) - p_{n-1}(x) p_{n+N}(x),
//
// their scaled limits, and the density formulas built from them:
//
//   regular:   μ'(x) = sqrt(-discr F) / (2π |g(x)|),   g = lim a_{n+N-1}   D^N_n
//   critical:  μ'(x) = sqrt(h(x))     / (2π |g̃(x)|),   g̃ = lim a_{n+N-1}^2 D^N_n
//
// with discr X = (tr X)^2 - 4 det X.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "turandet/recurrence.hpp"
#include "turandet/sequences.hpp"

namespace turandet {

struct RegularLimitMatrix {
  Mat2 F;
  double discr = 0.0;
};

/// h(x) = A x^2 - B and its roots x_- ≤ x_+ (absent when B < 0, i.e. h > 0 everywhere).
struct CriticalForbidden {
  double A = 0.0;
  double B = 0.0;
  std::optional<double> x_minus;
  std::optional<double> x_plus;

  double h(double x) const { return A * x * x - B; }
  bool empty() const { return !x_minus.has_value(); }
  bool forbids(double x) const { return x_minus && *x_minus <= x && x <= *x_plus; }
};

enum class DensityMode { Regular, Critical, Periodic };

struct DensityEstimate {
  double x = 0.0;
  double value = 0.0;
  DensityMode mode = DensityMode::Regular;
  std::size_t n = 0;
  double S_n = 0.0;
  double cauchy_gap = 0.0;  // |S_n - S_{n-N}| / |S_n|; NaN when n - N < 1
  bool forbidden_interval_empty = false;  // critical mode with B < 0
};

// --- Turán determinants -----------------------------------------------------

/// Straight from one polynomial stream up to index n + N.
double turan_direct(const CoefficientSequence& seq, std::size_t N, std::size_t n, double x);

/// <E X_n(x) v, v> with v = (p_{n-1}, p_n) and E = [[0, -1], [1, 0]].  Requires n ≥ 1.
double turan_quadratic(const CoefficientSequence& seq, std::size_t N, std::size_t n, double x);

// --- Discriminants ----------------------------------------------------------

double discr2(const Mat2& m);

/// F = Π_{j=0}^{N-1} [[0, 1], [-r_j, -q_j]] (later factors on the left) and its discriminant.
RegularLimitMatrix discr_regular_limit(const LimitData& limits);

/// Discriminant of F(x) = Π_j [[0, 1], [-α_{j-1}/α_j, (x - β_j)/α_j]] for N-periodic (α, β),
/// with α_{-1} = α_{N-1}.
double discr_periodic(std::span<const double> alpha, std::span<const double> beta, double x);

struct Interval {
  double lo;
  double hi;
};

/// Maximal subintervals of [grid.lo, grid.hi] on which discr_periodic < 0, found by a sign scan on
/// `points` samples and bisection of each sign change to 1e-10.
std::vector<Interval> spectral_bands(std::span<const double> alpha, std::span<const double> beta,
                                     Interval grid, std::size_t points);

// --- Critical regime --------------------------------------------------------

/// w_n(x) = U_n(x/2): w_0 = 1, w_1 = x, w_{n+1} = x w_n - w_{n-1}; w_{-1} = 0, w_{-n} = -w_{n-2}.
double chebyshev_w(int n, double x);

/// A = 4N²/(4 - q²),  B = 4 Σ_{i,j=1}^{N-1} s_i s_j w_{i-1}(q) w_{j-1}(q) w_{i-j}(q).
/// Throws ModeError for N < 2 or q not of the form 2cos(kπ/N).
CriticalForbidden critical_forbidden(std::size_t N, double q, std::span<const double> s);

// --- Scaled determinants and densities --------------------------------------

/// a_{n+N-1} D^N_n(x) (regular) or a_{n+N-1}^2 D^N_n(x) (critical).
double scaled_turan(const CoefficientSequence& seq, std::size_t N, std::size_t n, double x, Mode mode);

struct GLimit {
  double value = 0.0;
  std::size_t n_used = 0;
  double cauchy_gap = 0.0;
  bool converged = false;
};

struct GLimitOptions {
  double tol = 1e-3;
  std::size_t n_max = 1000;
  std::size_t n_min = 1;
  std::size_t residue = 0;  // critical mode: n runs over n ≡ residue (mod N)
};

/// Walks S_n along n and stops once |S_n - S_{n-N}| ≤ tol |S_n| holds on 3 consecutive steps,
/// or at n_max. If n_max < n_min, S is evaluated once at the first admissible index and the
/// result is flagged not converged. Throws DegenerateError when |S_n| is negligible.
GLimit g_limit(const CoefficientSequence& seq, std::size_t N, double x, Mode mode,
               const GLimitOptions& opts = {});

/// Relative size below which |S_n| counts as zero.
inline constexpr double kDegenerateThreshold = 1e-13;

/// sqrt(-discr F) / (2π |S_n(x)|).  HypothesisError if discr F ≥ 0.
DensityEstimate density_regular(const CoefficientSequence& seq, std::size_t N, double x, std::size_t n,
                                const LimitData& limits);

/// sqrt(h(x)) / (2π |S_n(x)|).  DomainError when x ∈ [x_-, x_+] or h(x) < 0.
DensityEstimate density_critical(const CoefficientSequence& seq, std::size_t N, double x, std::size_t n,
                                 const LimitData& limits);

/// Bounded N-periodic coefficients (α, β): sqrt(-discr F(x)) / (2π |a_{n+N-1} D^N_n(x)|).
/// DomainError outside the band set {discr F(x) < 0}.
DensityEstimate density_periodic(const CoefficientSequence& seq, std::size_t N, double x, std::size_t n,
                                 std::span<const double> alpha, std::span<const double> beta);

}  // namespace turandet
