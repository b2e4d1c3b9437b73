// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "turandet/christoffel.hpp"
#include "turandet/errors.hpp"
#include "turandet/estimator.hpp"
#include "turandet/oracle.hpp"
#include "turandet/parallel.hpp"
#include "turandet/recurrence.hpp"
#include "turandet/reference.hpp"
#include "turandet/table.hpp"
#include "turandet/turan.hpp"

using namespace turandet;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string cells(const std::vector<double>& v) {
  std::string s;
  for (double c : v) s += fmt::format("{}{:.3g}", s.empty() ? "" : " ", c);
  return s;
}

Outcome mp_table() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto ns = standard_truncations();
  const auto table = mp_error_table(ns, default_grid(CoefficientSequence::meixner_pollaczek(0.5, 1.0)));
  const double elapsed = seconds_since(t0);
  const double published[] = {1.48e-2, 1.05e-2, 4.99e-3, 4.99e-3};
  bool ok = elapsed < 10.0;
  std::string detail;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& c = table.rows[r].cells;
    std::size_t decreasing = 0;
    for (std::size_t k = 1; k < c.size(); ++k) decreasing += c[k] < c[k - 1];
    const bool row_ok = c.back() <= 3 * published[r] && decreasing == c.size() - 1;
    ok = ok && row_ok;
    detail += fmt::format("\n      {:<22} [{}] n=100: {:.3g} (limit {:.3g}), {} of {} pairs decreasing", table.rows[r].label,
                          cells(c), c.back(), 3 * published[r], decreasing, c.size() - 1);
  }
  return {ok, fmt::format("{:.2f} s{}", elapsed, detail)};
}

Outcome hermite_table() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto ns = standard_truncations();
  const auto table = hermite_error_table(ns, default_grid(CoefficientSequence::gen_hermite(0.0)));
  const double elapsed = seconds_since(t0);
  // rows: t = -0.5, 0 (N=1), 0, 0.5, 1
  const double published[] = {5.78e-2, 1.39e-2, 1.23e-2, 2.42e-2, 1.33e-1};
  bool ok = elapsed < 10.0;
  std::string detail;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& c = table.rows[r].cells;
    const bool row_ok = c.back() <= 3 * published[r];
    ok = ok && row_ok;
    detail += fmt::format("\n      {:<22} [{}] n=100: {:.3g} (limit {:.3g})", table.rows[r].label, cells(c), c.back(),
                          3 * published[r]);
  }
  return {ok, fmt::format("{:.2f} s{}", elapsed, detail)};
}

Outcome identities() {
  const std::vector<CoefficientSequence> fams{
      CoefficientSequence::gen_hermite(-0.5),        CoefficientSequence::gen_hermite(0.0),
      CoefficientSequence::gen_hermite(1.0),         CoefficientSequence::meixner_pollaczek(0.5, pi / 4),
      CoefficientSequence::meixner_pollaczek(1.0, pi / 2), CoefficientSequence::freud_asymptotic(4.0),
      CoefficientSequence::power_pair(0.8),          CoefficientSequence::power_pair_shift(0.7)};
  double worst_identity = 0, worst_det = 0;
  for (int k = 0; k < 10000; ++k) {
    const auto& seq = fams[static_cast<std::size_t>(oracle::uniform(0, static_cast<double>(fams.size())))];
    const std::size_t N = 1 + static_cast<std::size_t>(oracle::uniform(0, 3));
    const std::size_t n = 1 + static_cast<std::size_t>(oracle::uniform(0, 40));
    const double x = oracle::uniform(-3, 3);
    worst_identity = std::max(worst_identity, oracle::rel(turan_quadratic(seq, N, n, x), turan_direct(seq, N, n, x)));
    worst_det = std::max(worst_det, oracle::rel(transfer_product(seq, n, N, x).det(), seq.a(n - 1) / seq.a(n + N - 1)));
  }
  return {worst_identity <= 1e-10 && worst_det <= 1e-12,
          fmt::format("max rel. identity gap {:.2e} (limit 1e-10), max rel. det gap {:.2e} (limit 1e-12)",
                      worst_identity, worst_det)};
}

Outcome counterexamples() {
  const auto shift = CoefficientSequence::power_pair_shift(0.7);
  const auto s = eval_stream(shift, 0.0, 20001);
  std::size_t bad = 0;
  for (std::size_t k = 0; k <= 10000; ++k) {
    bad += s[2 * k].hi != (k % 2 ? -1.0 : 1.0);
    bad += s[2 * k + 1].hi != 0.0;
  }
  const auto pair = CoefficientSequence::power_pair(0.8);
  const double s3 = 1 / christoffel_lambda(pair, 1000, 0.0).lambda;
  const double s4 = 1 / christoffel_lambda(pair, 10000, 0.0).lambda;
  const double drift = std::abs(s4 - s3) / s3;
  return {bad == 0 && drift < 0.01,
          fmt::format("powerpairshift mismatches for k <= 1e4: {}; powerpair sum p^2(0): {:.6f} -> {:.6f}, drift {:.3e} (limit 1e-2)",
                      bad, s3, s4, drift)};
}

Outcome estimate_agreement() {
  struct Case {
    std::string name;
    CoefficientSequence seq;
    EstimatorKind kind;
    std::size_t N;
  };
  const std::vector<Case> cases{
      {"genhermite(t=0)", CoefficientSequence::gen_hermite(0.0), EstimatorKind::Critical, 2},
      {"mp(0.5,pi/2)", CoefficientSequence::meixner_pollaczek(0.5, pi / 2), EstimatorKind::Regular, 1},
  };
  const std::size_t n = 2000;
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const auto grid = default_grid(c.seq);
    const auto xs = linspace(grid.xmin, grid.xmax, 10);
    const auto turan = estimate_on_grid(c.seq, make_estimator(c.seq, c.kind, c.N, n), xs);
    const auto pair = estimate_on_grid(c.seq, make_estimator(c.seq, EstimatorKind::Pair, 1, n), xs);
    const auto chr = estimate_on_grid(c.seq, make_estimator(c.seq, EstimatorKind::Christoffel, 1, n), xs);
    double worst_pair = 0, worst_chr = 0, worst_x = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      worst_pair = std::max(worst_pair, std::abs(pair[i] - turan[i]) / turan[i]);
      const double e = std::abs(chr[i] - turan[i]) / turan[i];
      if (e > worst_chr) {
        worst_chr = e;
        worst_x = xs[i];
      }
    }
    ok = ok && worst_pair <= 0.10 && worst_chr <= 0.10;
    detail += fmt::format("\n      {:<16} pair {:.3g}, christoffel {:.3g} at x={:.3g} (limit 0.1)", c.name, worst_pair,
                          worst_chr, worst_x);
  }
  return {ok, fmt::format("n={}{}", n, detail)};
}

Outcome oracle_consistency() {
  struct Case {
    std::string name;
    CoefficientSequence seq;
    EstimatorKind kind;
    std::size_t N;
    double limit;
  };
  const std::vector<Case> cases{
      {"genhermite(t=0)", CoefficientSequence::gen_hermite(0.0), EstimatorKind::Critical, 2, 0.03},
      {"mp(0.5,pi/2)", CoefficientSequence::meixner_pollaczek(0.5, pi / 2), EstimatorKind::Regular, 1, 0.03},
      {"freudasymptotic(4)", CoefficientSequence::freud_asymptotic(4.0), EstimatorKind::Regular, 1, 0.05},
  };
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const auto grid = default_grid(c.seq);
    const auto rule = golub_welsch(c.seq, 200);
    const auto est = make_estimator(c.seq, c.kind, c.N, 200);
    const double d = cdf_compare(rule, [&](double x) { return est(c.seq, x); }, {grid.xmin, grid.xmax}, grid.points);
    ok = ok && d <= c.limit;
    detail += fmt::format("\n      {:<20} discrepancy {:.3g} (limit {:.3g}, max weight {:.3g})", c.name, d, c.limit,
                          rule.max_weight());
  }
  return {ok, detail.substr(1)};
}

Outcome special_functions() {
  double worst_gamma = 0;
  for (int k = 0; k < 2000; ++k) {
    const double lambda = oracle::uniform(0.01, 9.0), x = oracle::uniform(-10, 10);
    worst_gamma = std::max(worst_gamma, oracle::rel(gamma_abs2(lambda + 1, x), (lambda * lambda + x * x) * gamma_abs2(lambda, x)));
  }
  double worst_mass = 0;
  for (double t : {-0.5, 0.0, 0.5, 1.0}) {
    // x = u² on each half line absorbs the |x|^t singularity
    const auto f = [t](double u) {
      if (u == 0.0) return t == -0.5 ? 2 / std::tgamma((1 + t) / 2) : 0.0;
      return 2 * u * genhermite_density(t, u * u);
    };
    worst_mass = std::max(worst_mass, std::abs(2 * oracle::simpson(f, 0.0, std::sqrt(6.0), 10000) - 1));
  }
  for (auto [lambda, phi] : {std::pair{0.5, pi / 4}, {0.5, pi / 3}, {0.5, pi / 2}, {1.0, pi / 2}}) {
    const double m = oracle::simpson([&](double x) { return mp_density(lambda, phi, x); }, -8.0, 8.0, 10000);
    worst_mass = std::max(worst_mass, std::abs(m - 1));
  }
  double worst_cheb = 0;
  for (int n = 0; n <= 50; ++n) {
    for (int k = 1; k <= 100; ++k) {
      const double th = pi * k / 101.0;
      worst_cheb = std::max(worst_cheb, std::abs(chebyshev_w(n, 2 * std::cos(th)) * std::sin(th) - std::sin((n + 1) * th)));
    }
  }
  return {worst_gamma <= 1e-12 && worst_mass <= 1e-3 && worst_cheb <= 1e-10,
          fmt::format("gamma functional eq. {:.2e} (1e-12), mass error {:.2e} (1e-3), chebyshev {:.2e} (1e-10)",
                      worst_gamma, worst_mass, worst_cheb)};
}

template <typename E>
bool throws(const std::function<void()>& f) {
  try {
    f();
  } catch (const E&) {
    return true;
  } catch (...) {
    return false;
  }
  return false;
}

Outcome gates() {
  const auto mp = CoefficientSequence::meixner_pollaczek(0.5, pi / 2);
  const auto gh = CoefficientSequence::gen_hermite(0.0);
  const bool regular = throws<HypothesisError>([&] { density_regular(mp, 1, 0.3, 50, LimitData::regular({2.0}, {1.0})); });
  const auto L = LimitData::critical(2, 0.0, {0.0, 0.5});
  const bool inside = throws<DomainError>([&] { density_critical(gh, 2, 0.2, 50, L); }) &&
                      throws<DomainError>([&] { density_critical(gh, 2, -0.5, 50, L); });
  const bool outside = !throws<Error>([&] { density_critical(gh, 2, 0.7, 50, L); });
  const bool n1 = throws<ModeError>([&] { LimitData::critical(1, 0.0, {0.0}); }) &&
                  throws<ModeError>([&] { make_estimator(gh, EstimatorKind::Critical, 1, 50); });
  return {regular && inside && outside && n1,
          fmt::format("discr F >= 0 rejected: {}; inside [x-, x+] rejected: {}; outside accepted: {}; N=1 critical rejected: {}",
                      regular, inside, outside, n1)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string title;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Meixner-Pollaczek error table", mp_table},
      {2, "generalized Hermite error table", hermite_table},
      {3, "Turan identity and determinant", identities},
      {4, "counterexample sequences", counterexamples},
      {5, "pair and Christoffel vs Turan at n=2000", estimate_agreement},
      {6, "Gauss rule CDF consistency", oracle_consistency},
      {7, "special functions", special_functions},
      {8, "hypothesis gates", gates},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, fmt::format("threw: {}", e.what())};
    }
    failed += !o.pass;
    fmt::print("[{}] criterion {}: {} :: {}\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
