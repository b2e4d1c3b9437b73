#pragma once

// Jacobi parameters (a_n, b_n) of the three-term recurrence
//
//   a_{n-1} p_{n-1}(x) + b_n p_n(x) + a_n p_{n+1}(x) = x p_n(x),  p_{-1} = 0, p_0 = 1,
//
// the built-in families with unbounded a_n, and tail diagnostics on them.

#include <array>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace turandet {

enum class Family {
  GenHermite,        // params: t
  MeixnerPollaczek,  // params: lambda, phi
  FreudAsymptotic,   // params: beta
  PowerPair,         // params: kappa, epsilon
  PowerPairShift,    // params: kappa
  Custom,            // explicit table
};

std::string_view family_name(Family f);

struct Coeff {
  double a;
  double b;
};

/// Immutable coefficient source. Copies share the custom table.
class CoefficientSequence {
 public:
  /// a_n = sqrt((n + 1 + d_n) / 2), d_{2k} = t, d_{2k+1} = 0, b_n = 0.  Requires t > -1.
  static CoefficientSequence gen_hermite(double t);

  /// a_n = sqrt((n+1)(n+2λ)) / (2 sin φ), b_n = (n+λ) / tan φ.  λ > 0, φ ∈ (0, π).
  /// b_n is exactly 0 when φ is π/2 up to 1e-10.
  static CoefficientSequence meixner_pollaczek(double lambda, double phi);

  /// a_n = c' (n+1)^{1/β}, b_n = 0, with c' = ½ [Γ(β/2)Γ(½)/Γ((β+1)/2)]^{1/β}.  β ≥ 1.
  static CoefficientSequence freud_asymptotic(double beta);

  /// a_0 = ε, a_{2k-1} = a_{2k} = k^κ (k ≥ 1), b_n = 0.
  static CoefficientSequence power_pair(double kappa, double epsilon = 1.0);

  /// a_{2k} = a_{2k+1} = (k+1)^κ, b_n = 0.
  static CoefficientSequence power_pair_shift(double kappa);

  /// Finite table indexed from 0. Throws DomainError unless every a_n > 0 and all values are finite.
  static CoefficientSequence custom(std::vector<double> a, std::vector<double> b);

  Family family() const noexcept { return family_; }
  const std::array<double, 2>& params() const noexcept { return params_; }

  /// Number of available indices; empty for the infinite closed-form families.
  std::optional<std::size_t> size() const noexcept;

  /// Throws OutOfRangeError past a custom table, DomainError on non-finite evaluation.
  Coeff at(std::size_t n) const;
  double a(std::size_t n) const { return at(n).a; }
  double b(std::size_t n) const { return at(n).b; }

  /// True when b_n ≡ 0 is known structurally (all closed-form families except Meixner–Pollaczek off π/2).
  bool symmetric() const noexcept;

  /// Short human-readable label, e.g. "genhermite(t=0.5)".
  std::string describe() const;

 private:
  struct Table {
    std::vector<double> a;
    std::vector<double> b;
  };

  CoefficientSequence(Family f, std::array<double, 2> params) : family_(f), params_(params) {}

  Family family_;
  std::array<double, 2> params_{};
  double aux_ = 0.0;  // precomputed family constant (c' or cot φ)
  std::shared_ptr<const Table> table_;
};

Coeff coeff_at(const CoefficientSequence& seq, std::size_t n);

/// Reads a CSV with header `n,a,b` (LF or CRLF). Rows must be contiguous from n = 0.
/// Throws FormatError carrying the 1-based line number.
CoefficientSequence load_sequence_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Derived scalar sequences and their total N-variation.

enum class Selector {
  InvA,        // 1/a_n
  BOverA,      // b_n/a_n
  RatioShift,  // a_{n+shift}/a_n
  Diff,        // a_n - a_{n-1}, defined from n = 1
  BMinusQA,    // b_n - q a_n
  RawA,        // a_n
  RawB,        // b_n
};

struct DerivedSelector {
  Selector kind = Selector::InvA;
  double q = 0.0;         // BMinusQA only
  std::size_t shift = 1;  // RatioShift only

  std::size_t first_index() const noexcept { return kind == Selector::Diff ? 1 : 0; }
  std::string label() const;
};

double derived_value(const CoefficientSequence& seq, const DerivedSelector& sel, std::size_t n);

/// Σ_{n=n0}^{M-N} |x_{n+N} - x_n| of the derived sequence. Throws ArgumentError if M < N or N = 0.
double total_N_variation(const CoefficientSequence& seq, const DerivedSelector& sel, std::size_t N,
                         std::size_t M);

// ---------------------------------------------------------------------------
// Limit parameters of the regular and critical regimes.

enum class Mode { Regular, Critical };

std::string_view mode_name(Mode m);

struct LimitData {
  Mode mode = Mode::Regular;
  std::size_t N = 1;
  std::vector<double> q;  // regular: q_0..q_{N-1};  critical: the single q
  std::vector<double> r;  // regular only, r_i > 0
  std::vector<double> s;  // critical only, s_0..s_{N-1}

  /// Validates N ≥ 1, sizes, and r_i > 0 (DomainError).
  static LimitData regular(std::vector<double> q, std::vector<double> r);
  /// Validates q ≈ 2cos(kπ/N) within 1e-9 for some 1 ≤ k ≤ N-1 (ModeError, hence N ≥ 2) and stores
  /// the admissible value itself.
  static LimitData critical(std::size_t N, double q, std::vector<double> s);

  double critical_q() const { return q.front(); }
};

/// Admissible critical values 2cos(kπ/N), k = 1..N-1 (empty for N = 1).
std::vector<double> admissible_critical_q(std::size_t N);

struct Window {
  std::size_t lo;
  std::size_t hi;
};

struct LimitEstimate {
  LimitData limits;
  double deviation = 0.0;  // worst relative disagreement between full- and half-window extrapolations
  bool converged = false;
};

/// Default spread tolerance for declaring a tail window converged.
inline constexpr double kLimitTolerance = 1e-6;

/// Extrapolated tail limits of the residue-class subsequences b/a and a_{n-1}/a_n (regular)
/// or a_n - a_{n-1} (critical). Throws DiagnosticError when the window has not settled and
/// ModeError when no admissible critical q is within 1e-3 of the observed b_n/a_n limit.
LimitEstimate estimate_limits(const CoefficientSequence& seq, std::size_t N, Mode mode,
                              std::optional<double> q_hint, Window window,
                              double tolerance = kLimitTolerance);

/// Same as estimate_limits but reports non-convergence through the flag instead of throwing.
/// A regular estimate with some r_i ≤ 0 still throws DiagnosticError: it is not a LimitData.
LimitEstimate probe_limits(const CoefficientSequence& seq, std::size_t N, Mode mode,
                           std::optional<double> q_hint, Window window,
                           double tolerance = kLimitTolerance);

/// Closed-form limits for the built-in families, when they are known.
std::optional<LimitData> analytic_limits(const CoefficientSequence& seq, std::size_t N, Mode mode);

// ---------------------------------------------------------------------------
// Advisory check of the estimator hypotheses on a finite prefix.

struct VariationReport {
  DerivedSelector selector;
  std::size_t step = 1;         // variation step (N, or 1 for the ratio selector)
  double partial = 0.0;         // V over [n0, M]
  double tail_increment = 0.0;  // V(M) - V(M/2)
  bool available = true;
  std::string note;
};

struct AssumptionReport {
  Mode mode = Mode::Regular;
  std::size_t N = 1;
  std::size_t M = 0;
  double carleman_partial = 0.0;  // Σ_{n=0}^{M} 1/a_n
  double growth_exponent = 0.0;   // log(a_M / a_{M/2}) / log 2
  bool carleman_divergent = false;
  double inv_a_tail = 0.0;  // 1/a_M, should tend to 0
  std::vector<VariationReport> variations;
  std::optional<LimitEstimate> limits;
  std::string limits_note;
};

/// Never throws for sequence-level problems; failures are recorded in the report.
AssumptionReport check_assumptions(const CoefficientSequence& seq, std::size_t N, Mode mode,
                                   std::size_t M, std::optional<double> q_hint = std::nullopt);

}  // namespace turandet
