#include "turandet/turan.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "turandet/errors.hpp"

namespace turandet {

namespace {

// p_{-1}, p_0, ..., p_{last}; index k of the result holds p_{k-1}.
class PolyTable {
 public:
  PolyTable(const CoefficientSequence& seq, double x, std::size_t last) {
    values_.reserve(last + 2);
    RecurrenceStepper step(seq, x);
    values_.push_back(0.0);
    values_.push_back(1.0);
    while (step.current().n < last) values_.push_back(step.advance().hi);
  }
  double p(std::size_t k) const { return values_[k + 1]; }
  double p_prev(std::size_t k) const { return values_[k]; }  // p_{k-1}

 private:
  std::vector<double> values_;
};

struct TuranTerms {
  double D;
  double magnitude;  // |p_n p_{n+N-1}| + |p_{n-1} p_{n+N}|, the cancellation scale
};

TuranTerms turan_terms(const PolyTable& t, std::size_t N, std::size_t n) {
  const double first = t.p(n) * t.p(n + N - 1);
  const double second = t.p_prev(n) * t.p(n + N);
  return {first - second, std::abs(first) + std::abs(second)};
}

double scale_factor(const CoefficientSequence& seq, std::size_t N, std::size_t n, Mode mode) {
  const double a = seq.a(n + N - 1);
  return mode == Mode::Regular ? a : a * a;
}

void require_N(std::size_t N) {
  if (N == 0) throw ArgumentError("shift N must be positive");
}

struct ScaledValue {
  double S;
  double magnitude;
};

ScaledValue scaled_from(const PolyTable& t, const CoefficientSequence& seq, std::size_t N,
                        std::size_t n, Mode mode) {
  const auto terms = turan_terms(t, N, n);
  const double f = scale_factor(seq, N, n, mode);
  return {f * terms.D, f * terms.magnitude};
}

void check_degenerate(const ScaledValue& v, double x, std::size_t n) {
  if (!(std::abs(v.S) > kDegenerateThreshold * v.magnitude) || v.S == 0.0) {
    throw DegenerateError(fmt::format(
        "scaled Turan determinant vanishes at x = {}, n = {} (|S_n| = {:.3e}); x is likely at a density "
        "zero or outside the range of validity",
        x, n, std::abs(v.S)));
  }
}

struct ScaledPair {
  ScaledValue current;
  double gap;
};

// S_n and the relative Cauchy gap against S_{n-N} from one stream.
ScaledPair scaled_with_gap(const CoefficientSequence& seq, std::size_t N, std::size_t n, double x,
                           Mode mode) {
  if (n < 1) throw ArgumentError("truncation index n must be at least 1");
  const PolyTable t(seq, x, n + N);
  const auto now = scaled_from(t, seq, N, n, mode);
  check_degenerate(now, x, n);
  double gap = std::numeric_limits<double>::quiet_NaN();
  if (n >= N + 1) {
    const auto before = scaled_from(t, seq, N, n - N, mode);
    gap = std::abs(now.S - before.S) / std::abs(now.S);
  }
  return {now, gap};
}

}  // namespace

double turan_direct(const CoefficientSequence& seq, std::size_t N, std::size_t n, double x) {
  require_N(N);
  const PolyTable t(seq, x, n + N);
  return turan_terms(t, N, n).D;
}

double turan_quadratic(const CoefficientSequence& seq, std::size_t N, std::size_t n, double x) {
  require_N(N);
  if (n < 1) throw ArgumentError("turan_quadratic requires n >= 1");
  const auto v = eval_pair(seq, x, n).vec();
  const Mat2 E = Mat2::of(0.0, -1.0, 1.0, 0.0);
  const Vec2 w = (E * transfer_product(seq, n, N, x)) * v;
  return w.first * v.first + w.second * v.second;
}

double discr2(const Mat2& m) {
  const double tr = m.trace();
  return tr * tr - 4.0 * m.det();
}

RegularLimitMatrix discr_regular_limit(const LimitData& limits) {
  if (limits.mode != Mode::Regular) throw ModeError("discr_regular_limit needs regular limits");
  Mat2 F = Mat2::identity();
  for (std::size_t j = 0; j < limits.N; ++j) {
    F = Mat2::of(0.0, 1.0, -limits.r[j], -limits.q[j]) * F;
  }
  return {F, discr2(F)};
}

double discr_periodic(std::span<const double> alpha, std::span<const double> beta, double x) {
  const std::size_t N = alpha.size();
  if (N == 0 || beta.size() != N) throw ArgumentError("periodic alpha and beta must have equal positive length");
  Mat2 F = Mat2::identity();
  for (std::size_t j = 0; j < N; ++j) {
    const double a_prev = alpha[(j + N - 1) % N];
    F = Mat2::of(0.0, 1.0, -a_prev / alpha[j], (x - beta[j]) / alpha[j]) * F;
  }
  return discr2(F);
}

std::vector<Interval> spectral_bands(std::span<const double> alpha, std::span<const double> beta,
                                     Interval grid, std::size_t points) {
  if (points < 2) throw ArgumentError("band scan needs at least 2 grid points");
  if (!(grid.lo < grid.hi)) throw ArgumentError("band scan needs lo < hi");
  for (double a : alpha) {
    if (!(a > 0.0)) throw DomainError("periodic alpha must be positive");
  }
  const auto inside = [&](double x) { return discr_periodic(alpha, beta, x) < 0.0; };
  const auto at = [&](std::size_t k) {
    return k + 1 == points ? grid.hi
                           : grid.lo + (grid.hi - grid.lo) * static_cast<double>(k) /
                                           static_cast<double>(points - 1);
  };
  // Boundary between an inside and an outside point, located to 1e-10.
  const auto refine = [&](double in, double out) {
    while (std::abs(out - in) > 1e-10) {
      const double mid = 0.5 * (in + out);
      (inside(mid) ? in : out) = mid;
    }
    return 0.5 * (in + out);
  };

  std::vector<Interval> bands;
  bool prev_in = inside(at(0));
  double start = grid.lo;
  for (std::size_t k = 1; k < points; ++k) {
    const double x0 = at(k - 1);
    const double x1 = at(k);
    const bool now_in = inside(x1);
    if (now_in && !prev_in) start = refine(x1, x0);
    if (!now_in && prev_in) bands.push_back({start, refine(x0, x1)});
    prev_in = now_in;
  }
  if (prev_in) bands.push_back({start, grid.hi});
  return bands;
}

double chebyshev_w(int n, double x) {
  if (n == -1) return 0.0;
  if (n < -1) return -chebyshev_w(-n - 2, x);
  double prev = 1.0;  // w_0
  if (n == 0) return prev;
  double cur = x;  // w_1
  for (int k = 1; k < n; ++k) {
    const double next = x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

CriticalForbidden critical_forbidden(std::size_t N, double q, std::span<const double> s) {
  // Validation shares the admissibility rule of LimitData.
  (void)LimitData::critical(N, q, std::vector<double>(N, 0.0));
  if (s.size() != N) throw ArgumentError(fmt::format("critical_forbidden needs {} values of s", N));
  CriticalForbidden out;
  out.A = 4.0 * static_cast<double>(N * N) / (4.0 - q * q);
  double sum = 0.0;
  for (std::size_t i = 1; i < N; ++i) {
    for (std::size_t j = 1; j < N; ++j) {
      const int ii = static_cast<int>(i);
      const int jj = static_cast<int>(j);
      sum += s[i] * s[j] * chebyshev_w(ii - 1, q) * chebyshev_w(jj - 1, q) * chebyshev_w(ii - jj, q);
    }
  }
  out.B = 4.0 * sum;
  if (out.B >= 0.0) {
    const double root = std::sqrt(out.B / out.A);
    out.x_minus = -root;
    out.x_plus = root;
  }
  return out;
}

double scaled_turan(const CoefficientSequence& seq, std::size_t N, std::size_t n, double x, Mode mode) {
  require_N(N);
  if (n < 1) throw ArgumentError("scaled_turan requires n >= 1");
  const PolyTable t(seq, x, n + N);
  return scaled_from(t, seq, N, n, mode).S;
}

GLimit g_limit(const CoefficientSequence& seq, std::size_t N, double x, Mode mode,
               const GLimitOptions& opts) {
  require_N(N);
  if (!(opts.tol > 0.0)) throw ArgumentError("g_limit tolerance must be positive");
  if (mode == Mode::Critical && opts.residue >= N) throw ArgumentError("residue must be below N");
  const std::size_t step = (mode == Mode::Critical) ? N : 1;

  std::size_t n = std::max<std::size_t>(opts.n_min, 1);
  if (mode == Mode::Critical) {
    while (n % N != opts.residue) ++n;
  }

  // One growing stream serves every evaluated index.
  std::vector<double> p{0.0, 1.0};  // p[k] = p_{k-1}
  RecurrenceStepper stepper(seq, x);
  const auto ensure = [&](std::size_t last) {
    while (stepper.current().n < last) p.push_back(stepper.advance().hi);
  };
  const auto S_at = [&](std::size_t k) {
    ensure(k + N);
    const double first = p[k + 1] * p[k + N];
    const double second = p[k] * p[k + N + 1];
    const double f = scale_factor(seq, N, k, mode);
    return ScaledValue{f * (first - second), f * (std::abs(first) + std::abs(second))};
  };

  GLimit out;
  auto cur = S_at(n);
  check_degenerate(cur, x, n);
  out.value = cur.S;
  out.n_used = n;
  out.cauchy_gap = std::numeric_limits<double>::quiet_NaN();
  if (opts.n_max < n) return out;

  int streak = 0;
  while (n + step <= opts.n_max) {
    n += step;
    const auto next = S_at(n);
    check_degenerate(next, x, n);
    // Gap against S_{n-N}, which is the previous evaluated value in critical mode.
    const double ref = (n >= N + 1) ? S_at(n - N).S : cur.S;
    out.cauchy_gap = std::abs(next.S - ref) / std::abs(next.S);
    out.value = next.S;
    out.n_used = n;
    cur = next;
    streak = (out.cauchy_gap <= opts.tol) ? streak + 1 : 0;
    if (streak >= 3) {
      out.converged = true;
      break;
    }
  }
  return out;
}

DensityEstimate density_regular(const CoefficientSequence& seq, std::size_t N, double x, std::size_t n,
                                const LimitData& limits) {
  if (limits.mode != Mode::Regular) throw ModeError("density_regular needs regular limit data");
  if (limits.N != N) throw ArgumentError(fmt::format("limit data has N = {}, requested N = {}", limits.N, N));
  const auto F = discr_regular_limit(limits);
  if (!(F.discr < 0.0)) {
    throw HypothesisError(fmt::format(
        "regular density requires discr F < 0, got {} (the limit matrix is not elliptic)", F.discr));
  }
  const auto sp = scaled_with_gap(seq, N, n, x, Mode::Regular);
  DensityEstimate est;
  est.x = x;
  est.mode = DensityMode::Regular;
  est.n = n;
  est.S_n = sp.current.S;
  est.cauchy_gap = sp.gap;
  est.value = std::sqrt(-F.discr) / (2.0 * std::numbers::pi * std::abs(sp.current.S));
  return est;
}

DensityEstimate density_critical(const CoefficientSequence& seq, std::size_t N, double x, std::size_t n,
                                 const LimitData& limits) {
  if (limits.mode != Mode::Critical) throw ModeError("density_critical needs critical limit data");
  if (limits.N != N) throw ArgumentError(fmt::format("limit data has N = {}, requested N = {}", limits.N, N));
  const auto forbidden = critical_forbidden(N, limits.critical_q(), limits.s);
  if (forbidden.forbids(x)) {
    throw DomainError(fmt::format("x = {} lies in the forbidden interval [{}, {}]", x,
                                  *forbidden.x_minus, *forbidden.x_plus));
  }
  const double h = forbidden.h(x);
  if (h < 0.0) throw DomainError(fmt::format("h({}) = {} is negative", x, h));
  const auto sp = scaled_with_gap(seq, N, n, x, Mode::Critical);
  DensityEstimate est;
  est.x = x;
  est.mode = DensityMode::Critical;
  est.n = n;
  est.S_n = sp.current.S;
  est.cauchy_gap = sp.gap;
  est.forbidden_interval_empty = forbidden.empty();
  est.value = std::sqrt(h) / (2.0 * std::numbers::pi * std::abs(sp.current.S));
  return est;
}

DensityEstimate density_periodic(const CoefficientSequence& seq, std::size_t N, double x, std::size_t n,
                                 std::span<const double> alpha, std::span<const double> beta) {
  if (alpha.size() != N) throw ArgumentError("periodic limits must have N entries");
  const double d = discr_periodic(alpha, beta, x);
  if (!(d < 0.0)) throw DomainError(fmt::format("x = {} is outside the band set (discr = {})", x, d));
  const auto sp = scaled_with_gap(seq, N, n, x, Mode::Regular);
  DensityEstimate est;
  est.x = x;
  est.mode = DensityMode::Periodic;
  est.n = n;
  est.S_n = sp.current.S;
  est.cauchy_gap = sp.gap;
  est.value = std::sqrt(-d) / (2.0 * std::numbers::pi * std::abs(sp.current.S));
  return est;
}

}  // namespace turandet
