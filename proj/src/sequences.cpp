#include "turandet/sequences.hpp"

#include <Eigen/Dense>
#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "turandet/errors.hpp"

namespace turandet {

std::string_view family_name(Family f) {
  switch (f) {
    case Family::GenHermite: return "genhermite";
    case Family::MeixnerPollaczek: return "meixnerpollaczek";
    case Family::FreudAsymptotic: return "freudasymptotic";
    case Family::PowerPair: return "powerpair";
    case Family::PowerPairShift: return "powerpairshift";
    case Family::Custom: return "custom";
  }
  return "unknown";
}

std::string_view mode_name(Mode m) { return m == Mode::Regular ? "regular" : "critical"; }

// ---------------------------------------------------------------------------

CoefficientSequence CoefficientSequence::gen_hermite(double t) {
  if (!(t > -1.0) || !std::isfinite(t)) {
    throw DomainError(fmt::format("genhermite requires t > -1 (got {})", t));
  }
  return CoefficientSequence(Family::GenHermite, {t, 0.0});
}

CoefficientSequence CoefficientSequence::meixner_pollaczek(double lambda, double phi) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError(fmt::format("meixnerpollaczek requires lambda > 0 (got {})", lambda));
  }
  if (!(phi > 0.0 && phi < std::numbers::pi)) {
    throw DomainError(fmt::format("meixnerpollaczek requires phi in (0, pi) (got {})", phi));
  }
  CoefficientSequence seq(Family::MeixnerPollaczek, {lambda, phi});
  seq.aux_ = std::abs(phi - std::numbers::pi / 2) <= 1e-10 ? 0.0 : std::cos(phi) / std::sin(phi);
  return seq;
}

CoefficientSequence CoefficientSequence::freud_asymptotic(double beta) {
  if (!(beta >= 1.0) || !std::isfinite(beta)) {
    throw DomainError(fmt::format("freudasymptotic requires beta >= 1 (got {})", beta));
  }
  CoefficientSequence seq(Family::FreudAsymptotic, {beta, 0.0});
  const double ratio = std::exp(std::lgamma(beta / 2) + std::lgamma(0.5) - std::lgamma((beta + 1) / 2));
  seq.aux_ = 0.5 * std::pow(ratio, 1.0 / beta);
  return seq;
}

CoefficientSequence CoefficientSequence::power_pair(double kappa, double epsilon) {
  if (!std::isfinite(kappa) || !(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError(fmt::format("powerpair requires finite kappa and epsilon > 0 (got {}, {})",
                                  kappa, epsilon));
  }
  return CoefficientSequence(Family::PowerPair, {kappa, epsilon});
}

CoefficientSequence CoefficientSequence::power_pair_shift(double kappa) {
  if (!std::isfinite(kappa)) throw DomainError("powerpairshift requires finite kappa");
  return CoefficientSequence(Family::PowerPairShift, {kappa, 0.0});
}

CoefficientSequence CoefficientSequence::custom(std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) throw ArgumentError("custom sequence: a and b differ in length");
  if (a.empty()) throw ArgumentError("custom sequence: empty table");
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (!std::isfinite(a[n]) || !std::isfinite(b[n])) {
      throw DomainError(fmt::format("custom sequence: non-finite coefficient at n = {}", n));
    }
    if (!(a[n] > 0.0)) {
      throw DomainError(fmt::format("custom sequence: a_{} = {} is not positive", n, a[n]));
    }
  }
  CoefficientSequence seq(Family::Custom, {0.0, 0.0});
  seq.table_ = std::make_shared<const Table>(Table{std::move(a), std::move(b)});
  return seq;
}

std::optional<std::size_t> CoefficientSequence::size() const noexcept {
  if (table_) return table_->a.size();
  return std::nullopt;
}

bool CoefficientSequence::symmetric() const noexcept {
  switch (family_) {
    case Family::MeixnerPollaczek: return aux_ == 0.0;
    case Family::Custom:
      return std::all_of(table_->b.begin(), table_->b.end(), [](double v) { return v == 0.0; });
    default: return true;
  }
}

Coeff CoefficientSequence::at(std::size_t n) const {
  const double nd = static_cast<double>(n);
  Coeff c{0.0, 0.0};
  switch (family_) {
    case Family::GenHermite: {
      const double d = (n % 2 == 0) ? params_[0] : 0.0;
      c.a = std::sqrt(nd + 1.0 + d) / std::numbers::sqrt2;
      break;
    }
    case Family::MeixnerPollaczek: {
      const double lambda = params_[0];
      c.a = std::sqrt((nd + 1.0) * (nd + 2.0 * lambda)) / (2.0 * std::sin(params_[1]));
      c.b = (nd + lambda) * aux_;
      break;
    }
    case Family::FreudAsymptotic:
      c.a = aux_ * std::pow(nd + 1.0, 1.0 / params_[0]);
      break;
    case Family::PowerPair:
      c.a = (n == 0) ? params_[1] : std::pow(static_cast<double>((n + 1) / 2), params_[0]);
      break;
    case Family::PowerPairShift:
      c.a = std::pow(static_cast<double>(n / 2 + 1), params_[0]);
      break;
    case Family::Custom:
      if (n >= table_->a.size()) {
        throw OutOfRangeError(
            fmt::format("index {} beyond custom table of length {}", n, table_->a.size()), n,
            table_->a.size());
      }
      return {table_->a[n], table_->b[n]};
  }
  if (!std::isfinite(c.a) || !std::isfinite(c.b) || !(c.a > 0.0)) {
    throw DomainError(fmt::format("{}: non-finite or non-positive coefficient at n = {}", describe(), n));
  }
  return c;
}

std::string CoefficientSequence::describe() const {
  switch (family_) {
    case Family::GenHermite: return fmt::format("genhermite(t={})", params_[0]);
    case Family::MeixnerPollaczek:
      return fmt::format("meixnerpollaczek(lambda={}, phi={})", params_[0], params_[1]);
    case Family::FreudAsymptotic: return fmt::format("freudasymptotic(beta={})", params_[0]);
    case Family::PowerPair:
      return fmt::format("powerpair(kappa={}, epsilon={})", params_[0], params_[1]);
    case Family::PowerPairShift: return fmt::format("powerpairshift(kappa={})", params_[0]);
    case Family::Custom: return fmt::format("custom(length={})", table_->a.size());
  }
  return "unknown";
}

Coeff coeff_at(const CoefficientSequence& seq, std::size_t n) { return seq.at(n); }

// ---------------------------------------------------------------------------
// CSV ingestion

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view field, T& out) {
  if (field.empty()) return false;
  if (field.front() == '+') field.remove_prefix(1);
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

CoefficientSequence load_sequence_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(fmt::format("cannot open coefficient file '{}'", path.string()), 0);

  std::string line;
  std::size_t row = 0;
  bool have_header = false;
  std::vector<double> a;
  std::vector<double> b;
  while (std::getline(in, line)) {
    ++row;
    const auto text = trim(line);
    if (!have_header) {
      if (row == 1 && text.size() >= 3 && static_cast<unsigned char>(text[0]) == 0xEF) {
        throw FormatError("coefficient file must not start with a byte-order mark", row);
      }
      const auto fields = split_fields(text);
      if (fields.size() != 3 || fields[0] != "n" || fields[1] != "a" || fields[2] != "b") {
        throw FormatError(fmt::format("line {}: expected header 'n,a,b'", row), row);
      }
      have_header = true;
      continue;
    }
    if (text.empty()) continue;
    const auto fields = split_fields(text);
    if (fields.size() != 3) {
      throw FormatError(fmt::format("line {}: expected 3 fields, found {}", row, fields.size()), row);
    }
    long long n = 0;
    double av = 0.0;
    double bv = 0.0;
    if (!parse_number(fields[0], n)) {
      throw FormatError(fmt::format("line {}: cannot parse index '{}'", row, fields[0]), row);
    }
    if (!parse_number(fields[1], av) || !parse_number(fields[2], bv)) {
      throw FormatError(fmt::format("line {}: cannot parse coefficients", row), row);
    }
    const auto expected = static_cast<long long>(a.size());
    if (n < expected) {
      throw FormatError(fmt::format("line {}: duplicate or out-of-order index {}", row, n), row);
    }
    if (n > expected) {
      throw FormatError(fmt::format("line {}: missing index {} (found {})", row, expected, n), row);
    }
    if (!std::isfinite(av) || !std::isfinite(bv)) {
      throw FormatError(fmt::format("line {}: non-finite coefficient", row), row);
    }
    if (!(av > 0.0)) {
      throw FormatError(fmt::format("line {}: a_{} = {} must be positive", row, n, av), row);
    }
    a.push_back(av);
    b.push_back(bv);
  }
  if (!have_header) throw FormatError("empty coefficient file", row == 0 ? 1 : row);
  if (a.empty()) throw FormatError("coefficient file has a header but no rows", row + 1);
  return CoefficientSequence::custom(std::move(a), std::move(b));
}

// ---------------------------------------------------------------------------
// Derived sequences

std::string DerivedSelector::label() const {
  switch (kind) {
    case Selector::InvA: return "1/a_n";
    case Selector::BOverA: return "b_n/a_n";
    case Selector::RatioShift: return fmt::format("a_(n+{})/a_n", shift);
    case Selector::Diff: return "a_n-a_(n-1)";
    case Selector::BMinusQA: return fmt::format("b_n-({})a_n", q);
    case Selector::RawA: return "a_n";
    case Selector::RawB: return "b_n";
  }
  return "?";
}

double derived_value(const CoefficientSequence& seq, const DerivedSelector& sel, std::size_t n) {
  switch (sel.kind) {
    case Selector::InvA: return 1.0 / seq.a(n);
    case Selector::BOverA: {
      const auto c = seq.at(n);
      return c.b / c.a;
    }
    case Selector::RatioShift: return seq.a(n + sel.shift) / seq.a(n);
    case Selector::Diff:
      if (n == 0) throw ArgumentError("selector a_n - a_(n-1) is undefined at n = 0");
      return seq.a(n) - seq.a(n - 1);
    case Selector::BMinusQA: {
      const auto c = seq.at(n);
      return c.b - sel.q * c.a;
    }
    case Selector::RawA: return seq.a(n);
    case Selector::RawB: return seq.b(n);
  }
  return 0.0;
}

double total_N_variation(const CoefficientSequence& seq, const DerivedSelector& sel, std::size_t N,
                         std::size_t M) {
  if (N == 0) throw ArgumentError("variation step N must be positive");
  if (M < N) throw ArgumentError(fmt::format("total variation needs M >= N (M = {}, N = {})", M, N));
  const std::size_t n0 = sel.first_index();
  if (M < n0 + N) return 0.0;
  // Ring of the last N values so each term is evaluated once.
  std::vector<double> ring(N);
  for (std::size_t k = 0; k < N; ++k) ring[k] = derived_value(seq, sel, n0 + k);
  double total = 0.0;
  for (std::size_t n = n0; n + N <= M; ++n) {
    const double next = derived_value(seq, sel, n + N);
    auto& slot = ring[(n - n0) % N];
    total += std::abs(next - slot);
    slot = next;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Limits

std::vector<double> admissible_critical_q(std::size_t N) {
  std::vector<double> out;
  for (std::size_t k = 1; k < N; ++k) {
    // cos(π/2) is not exactly 0 in floating point
    out.push_back(2 * k == N ? 0.0 : 2.0 * std::cos(static_cast<double>(k) * std::numbers::pi / static_cast<double>(N)));
  }
  return out;
}

namespace {

std::optional<double> nearest_admissible(std::size_t N, double q, double tol) {
  std::optional<double> best;
  double best_gap = tol;
  for (double cand : admissible_critical_q(N)) {
    const double gap = std::abs(cand - q);
    if (gap <= best_gap) {
      best_gap = gap;
      best = cand;
    }
  }
  return best;
}

}  // namespace

LimitData LimitData::regular(std::vector<double> q, std::vector<double> r) {
  if (q.empty() || q.size() != r.size()) {
    throw ArgumentError("regular limits need N >= 1 values of both q and r");
  }
  for (double v : r) {
    if (!(v > 0.0)) throw DomainError(fmt::format("regular limit r_i = {} must be positive", v));
  }
  LimitData d;
  d.mode = Mode::Regular;
  d.N = q.size();
  d.q = std::move(q);
  d.r = std::move(r);
  return d;
}

LimitData LimitData::critical(std::size_t N, double q, std::vector<double> s) {
  if (N < 2) throw ModeError("critical mode needs N >= 2: no admissible q = 2cos(k pi/N) exists for N = 1");
  if (s.size() != N) throw ArgumentError(fmt::format("critical limits need {} values of s", N));
  const auto snapped = nearest_admissible(N, q, 1e-9);
  if (!snapped) {
    throw ModeError(fmt::format("q = {} is not of the form 2cos(k pi/{})", q, N));
  }
  LimitData d;
  d.mode = Mode::Critical;
  d.N = N;
  d.q = {*snapped};
  d.s = std::move(s);
  return d;
}

namespace {

constexpr int kExtrapolationDegree = 5;

// Least-squares fit of y(n) ≈ Σ_k c_k u^k with u = sqrt(n_ref / n); returns c_0, the n → ∞ value.
double extrapolate(const std::vector<std::size_t>& ns, const std::vector<double>& ys) {
  const auto m = static_cast<Eigen::Index>(ns.size());
  if (m == 1) return ys.front();
  const int degree = std::min<int>(kExtrapolationDegree, static_cast<int>(m) - 1);
  const double n_ref = static_cast<double>(ns.front());
  Eigen::MatrixXd V(m, degree + 1);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double u = std::sqrt(n_ref / static_cast<double>(ns[static_cast<std::size_t>(i)]));
    double p = 1.0;
    for (int k = 0; k <= degree; ++k) {
      V(i, k) = p;
      p *= u;
    }
    y(i) = ys[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd c = V.colPivHouseholderQr().solve(y);
  return c(0);
}

struct ClassLimit {
  double value;
  double deviation;
};

template <typename F>
ClassLimit residue_limit(F&& f, std::size_t N, std::size_t residue, Window w) {
  std::vector<std::size_t> ns;
  std::vector<double> ys;
  std::size_t start = w.lo + ((residue + N - w.lo % N) % N);
  for (std::size_t n = start; n <= w.hi; n += N) {
    ns.push_back(n);
    ys.push_back(f(n));
  }
  const double full = extrapolate(ns, ys);
  const std::size_t mid = w.lo + (w.hi - w.lo) / 2;
  const auto split = static_cast<std::size_t>(
      std::lower_bound(ns.begin(), ns.end(), mid) - ns.begin());
  const std::vector<std::size_t> ns_half(ns.begin() + static_cast<std::ptrdiff_t>(split), ns.end());
  const std::vector<double> ys_half(ys.begin() + static_cast<std::ptrdiff_t>(split), ys.end());
  const double half = extrapolate(ns_half, ys_half);
  return {full, std::abs(full - half) / std::max(1.0, std::abs(full))};
}

LimitEstimate estimate_impl(const CoefficientSequence& seq, std::size_t N, Mode mode,
                            std::optional<double> q_hint, Window w, double tolerance) {
  if (N == 0) throw ArgumentError("N must be positive");
  if (w.hi < w.lo || w.hi - w.lo < 4 * N) {
    throw ArgumentError(fmt::format("window [{}, {}] must span at least 4N = {} indices", w.lo, w.hi, 4 * N));
  }
  if (w.lo == 0) throw ArgumentError("window must start at n >= 1 (ratios use a_{n-1})");
  if (auto size = seq.size(); size && w.hi >= *size) {
    throw OutOfRangeError(fmt::format("window end {} beyond custom table of length {}", w.hi, *size),
                          w.hi, *size);
  }

  LimitEstimate out;
  double deviation = 0.0;
  if (mode == Mode::Regular) {
    std::vector<double> q(N), r(N);
    for (std::size_t i = 0; i < N; ++i) {
      const auto lq = residue_limit([&](std::size_t n) { return seq.b(n) / seq.a(n); }, N, i, w);
      const auto lr = residue_limit([&](std::size_t n) { return seq.a(n - 1) / seq.a(n); }, N, i, w);
      q[i] = lq.value;
      r[i] = lr.value;
      deviation = std::max({deviation, lq.deviation, lr.deviation});
    }
    for (double& v : r) {
      if (!(v > 0.0)) {
        throw DiagnosticError(fmt::format("estimated ratio limit r = {} is not positive", v), deviation);
      }
    }
    out.limits = LimitData::regular(std::move(q), std::move(r));
  } else {
    if (N < 2) throw ModeError("critical mode needs N >= 2: no admissible q = 2cos(k pi/N) exists for N = 1");
    double q = 0.0;
    if (q_hint) {
      q = *q_hint;
    } else {
      // b_n/a_n converges along the whole sequence in the critical regime.
      const auto lq = residue_limit([&](std::size_t n) { return seq.b(n) / seq.a(n); }, 1, 0, w);
      deviation = std::max(deviation, lq.deviation);
      q = lq.value;
    }
    const auto snapped = nearest_admissible(N, q, 1e-3);
    if (!snapped) {
      throw ModeError(fmt::format("b_n/a_n limit {} is not within 1e-3 of any 2cos(k pi/{})", q, N));
    }
    std::vector<double> s(N);
    for (std::size_t i = 0; i < N; ++i) {
      const auto ls = residue_limit([&](std::size_t n) { return seq.a(n) - seq.a(n - 1); }, N, i, w);
      s[i] = ls.value;
      deviation = std::max(deviation, ls.deviation);
    }
    out.limits = LimitData::critical(N, *snapped, std::move(s));
  }
  out.deviation = deviation;
  out.converged = deviation < tolerance;
  return out;
}

}  // namespace

LimitEstimate estimate_limits(const CoefficientSequence& seq, std::size_t N, Mode mode,
                              std::optional<double> q_hint, Window window, double tolerance) {
  auto est = estimate_impl(seq, N, mode, q_hint, window, tolerance);
  if (!est.converged) {
    throw DiagnosticError(
        fmt::format("tail window [{}, {}] has not converged: deviation {:.3e} exceeds {:.1e}",
                    window.lo, window.hi, est.deviation, tolerance),
        est.deviation);
  }
  return est;
}

LimitEstimate probe_limits(const CoefficientSequence& seq, std::size_t N, Mode mode,
                           std::optional<double> q_hint, Window window, double tolerance) {
  return estimate_impl(seq, N, mode, q_hint, window, tolerance);
}

std::optional<LimitData> analytic_limits(const CoefficientSequence& seq, std::size_t N, Mode mode) {
  if (N == 0) throw ArgumentError("N must be positive");
  switch (seq.family()) {
    case Family::Custom: return std::nullopt;
    case Family::MeixnerPollaczek:
      if (mode == Mode::Regular) {
        // b_n/a_n → 2cos φ, a_{n-1}/a_n → 1
        const double q = 2.0 * std::cos(seq.params()[1]);
        return LimitData::regular(std::vector<double>(N, seq.symmetric() ? 0.0 : q),
                                  std::vector<double>(N, 1.0));
      }
      return std::nullopt;
    default:
      // b ≡ 0 and a_n grows sublinearly or like √n: q = 0, r = 1, s = 0.
      if (mode == Mode::Regular) {
        return LimitData::regular(std::vector<double>(N, 0.0), std::vector<double>(N, 1.0));
      }
      if (seq.family() == Family::GenHermite || seq.family() == Family::FreudAsymptotic) {
        if (N % 2 == 0) return LimitData::critical(N, 0.0, std::vector<double>(N, 0.0));
      }
      return std::nullopt;
  }
}

// ---------------------------------------------------------------------------

AssumptionReport check_assumptions(const CoefficientSequence& seq, std::size_t N, Mode mode,
                                   std::size_t M, std::optional<double> q_hint) {
  if (N == 0) throw ArgumentError("N must be positive");
  if (M < 4 * N) throw ArgumentError(fmt::format("assumption check needs M >= 4N (M = {}, N = {})", M, N));

  AssumptionReport rep;
  rep.mode = mode;
  rep.N = N;
  rep.M = M;

  const std::size_t half = M / 2;
  try {
    double sum = 0.0;
    for (std::size_t n = 0; n <= M; ++n) sum += 1.0 / seq.a(n);
    rep.carleman_partial = sum;
    rep.inv_a_tail = 1.0 / seq.a(M);
    rep.growth_exponent = std::log(seq.a(M) / seq.a(half)) /
                          std::log(static_cast<double>(M + 1) / static_cast<double>(half + 1));
    // Σ 1/a_n diverges for polynomial growth of order at most 1.
    rep.carleman_divergent = rep.growth_exponent <= 1.0 + 1e-2;
  } catch (const Error& e) {
    rep.limits_note = fmt::format("carleman sum unavailable: {}", e.what());
  }

  std::optional<double> q = q_hint;
  try {
    auto est = probe_limits(seq, N, mode, q_hint, Window{half, M});
    if (mode == Mode::Critical && !q) q = est.limits.critical_q();
    rep.limits = std::move(est);
  } catch (const Error& e) {
    rep.limits_note = e.what();
  }

  std::vector<std::pair<DerivedSelector, std::size_t>> wanted;
  if (mode == Mode::Regular) {
    wanted = {{DerivedSelector{Selector::InvA}, N},
              {DerivedSelector{Selector::BOverA}, N},
              {DerivedSelector{Selector::RatioShift, 0.0, N}, 1}};
  } else {
    wanted = {{DerivedSelector{Selector::InvA}, N},
              {DerivedSelector{Selector::Diff}, N},
              {DerivedSelector{Selector::BMinusQA, q.value_or(0.0)}, N}};
  }
  for (const auto& [sel, step] : wanted) {
    VariationReport v;
    v.selector = sel;
    v.step = step;
    if (sel.kind == Selector::BMinusQA && !q) {
      v.available = false;
      v.note = "critical q unknown";
      rep.variations.push_back(v);
      continue;
    }
    try {
      v.partial = total_N_variation(seq, sel, step, M);
      v.tail_increment = v.partial - (half >= step ? total_N_variation(seq, sel, step, half) : 0.0);
    } catch (const Error& e) {
      v.available = false;
      v.note = e.what();
    }
    rep.variations.push_back(v);
  }
  return rep;
}

}  // namespace turandet
