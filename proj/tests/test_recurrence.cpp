#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "turandet/errors.hpp"
#include "turandet/recurrence.hpp"

using namespace turandet;
using std::numbers::pi;

namespace {

std::vector<CoefficientSequence> families() {
  return {CoefficientSequence::gen_hermite(0.0),         CoefficientSequence::gen_hermite(-0.5),
          CoefficientSequence::gen_hermite(1.0),         CoefficientSequence::meixner_pollaczek(0.5, pi / 2),
          CoefficientSequence::meixner_pollaczek(0.5, pi / 4), CoefficientSequence::meixner_pollaczek(1.0, pi / 3),
          CoefficientSequence::freud_asymptotic(4.0),    CoefficientSequence::power_pair(0.8),
          CoefficientSequence::power_pair_shift(0.7)};
}

}  // namespace

TEST_CASE("transfer_matrix entries") {
  const auto c = CoefficientSequence::custom({2.0, 2.0, 3.0}, {0.0, 0.0, 0.5});
  CHECK(transfer_matrix(c, 1, 0.0) == Mat2::of(0, 1, -1, 0));
  const auto m = transfer_matrix(c, 2, 0.5);
  CHECK(m(1, 0) == doctest::Approx(-2.0 / 3.0));
  CHECK(m(1, 1) == 0.0);
  // n = 0 uses a_{-1} = 1
  CHECK(transfer_matrix(c, 0, 1.0)(1, 0) == doctest::Approx(-0.5));
}

TEST_CASE("transfer matrix determinants") {
  for (const auto& seq : families()) {
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 1 + static_cast<std::size_t>(oracle::uniform(0, 60));
      const double x = oracle::uniform(-3, 3);
      CHECK(oracle::rel(transfer_matrix(seq, n, x).det(), seq.a(n - 1) / seq.a(n)) < 1e-14);
      for (std::size_t N = 1; N <= 5; ++N) {
        CHECK(oracle::rel(transfer_product(seq, n, N, x).det(), seq.a(n - 1) / seq.a(n + N - 1)) < 1e-12);
      }
    }
  }
}

TEST_CASE("transfer_product ordering and action") {
  const auto seq = CoefficientSequence::meixner_pollaczek(0.5, pi / 4);
  CHECK(transfer_product(seq, 4, 1, 0.3) == transfer_matrix(seq, 4, 0.3));
  const auto expected = transfer_matrix(seq, 6, 0.3) * transfer_matrix(seq, 5, 0.3) * transfer_matrix(seq, 4, 0.3);
  const auto got = transfer_product(seq, 4, 3, 0.3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(got(i, j) == doctest::Approx(expected(i, j)).epsilon(1e-15));

  for (const auto& s : families()) {
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t n = 1 + static_cast<std::size_t>(oracle::uniform(0, 50));
      const std::size_t N = 1 + static_cast<std::size_t>(oracle::uniform(0, 5));
      const double x = oracle::uniform(-3, 3);
      const auto v = transfer_product(s, n, N, x) * eval_pair(s, x, n).vec();
      const auto want = eval_pair(s, x, n + N);
      const double scale = std::abs(want.lo) + std::abs(want.hi);
      CHECK(std::abs(v.first - want.lo) <= 1e-12 * scale);
      CHECK(std::abs(v.second - want.hi) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("eval_pair initial conditions and hand values") {
  for (const auto& seq : families()) {
    const auto p0 = eval_pair(seq, 0.7, 0);
    CHECK(p0.lo == 0.0);
    CHECK(p0.hi == 1.0);
    const auto p1 = eval_pair(seq, 0.7, 1);
    CHECK(p1.lo == 1.0);
    CHECK(p1.hi == doctest::Approx((0.7 - seq.b(0)) / seq.a(0)).epsilon(1e-15));
  }
  const auto gh = CoefficientSequence::gen_hermite(0.0);
  CHECK(eval_pair(gh, 0.0, 2).hi == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("powerpairshift at the origin") {
  const auto seq = CoefficientSequence::power_pair_shift(0.7);
  const auto s = eval_stream(seq, 0.0, 2000);
  for (std::size_t k = 0; 2 * k + 1 <= 2000; ++k) {
    CHECK(s[2 * k].hi == (k % 2 ? -1.0 : 1.0));
    CHECK(s[2 * k + 1].hi == 0.0);
  }
}

TEST_CASE("eval_stream matches eval_pair and the long double oracle") {
  const std::vector<std::pair<CoefficientSequence, oracle::CoefFn>> cases{
      {CoefficientSequence::gen_hermite(0.5), oracle::genhermite(0.5L)},
      {CoefficientSequence::meixner_pollaczek(1.0, pi / 3), oracle::meixner_pollaczek(1.0L, pi / 3)},
      {CoefficientSequence::power_pair(0.8), oracle::power_pair(0.8L, 1.0L)},
  };
  for (const auto& [seq, ref] : cases) {
    for (double x : {-2.1, 0.0, 0.37, 1.9}) {
      const auto s = eval_stream(seq, x, 60);
      REQUIRE(s.size() == 61);
      const auto p = oracle::polys(ref, x, 60);
      for (std::size_t n = 0; n <= 60; ++n) {
        const auto e = eval_pair(seq, x, n);
        CHECK(s[n].n == n);
        CHECK(s[n].lo == e.lo);
        CHECK(s[n].hi == e.hi);
        CHECK(std::abs(s[n].hi - static_cast<double>(p[n])) <= 1e-11 * (1 + std::abs(static_cast<double>(p[n]))));
      }
    }
  }
}

TEST_CASE("recurrence residual") {
  for (const auto& seq : families()) {
    for (double x : {-2.5, -0.3, 0.0, 1.1, 2.9}) {
      const auto s = eval_stream(seq, x, 80);
      for (std::size_t n = 1; n < 80; ++n) {
        const double t1 = seq.a(n - 1) * s[n].lo, t2 = seq.b(n) * s[n].hi, t3 = seq.a(n) * s[n + 1].hi,
                     t4 = x * s[n].hi;
        const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), std::abs(t4)});
        CHECK(std::abs(t1 + t2 + t3 - t4) <= 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("parity for symmetric families") {
  for (const auto& seq : families()) {
    if (!seq.symmetric()) continue;
    for (double x : {0.3, 1.7, 2.6}) {
      const auto plus = eval_stream(seq, x, 50);
      const auto minus = eval_stream(seq, -x, 50);
      for (std::size_t n = 0; n <= 50; ++n) CHECK(minus[n].hi == (n % 2 ? -plus[n].hi : plus[n].hi));
    }
  }
}

TEST_CASE("leading coefficient") {
  // p_n(x) = lead_n (x^n - (b_0 + ... + b_{n-1}) x^{n-1} + ...), so at x = 1e6 the ratio is off by
  // Σb/x unless b ≡ 0; that first-order term is divided out
  for (const auto& seq : families()) {
    double lead = 1.0, bsum = 0.0;
    for (std::size_t n = 0; n <= 10; ++n) {
      const double x = 1e6;
      const double ratio = eval_pair(seq, x, n).hi / std::pow(x, static_cast<double>(n));
      CHECK(oracle::rel(ratio / (1 - bsum / x), lead) < 1e-6);
      if (seq.symmetric()) CHECK(oracle::rel(ratio, lead) < 1e-6);
      lead /= seq.a(n);
      bsum += seq.b(n);
    }
  }
}

TEST_CASE("consecutive values never vanish together") {
  const auto seq = CoefficientSequence::gen_hermite(0.0);
  for (const auto& p : eval_stream(seq, 0.0, 200)) CHECK((p.lo != 0.0 || p.hi != 0.0));
}

TEST_CASE("overflow reports the last finite index") {
  const auto seq = CoefficientSequence::gen_hermite(0.0);
  try {
    eval_pair(seq, 1e8, 400);
    FAIL("expected OverflowError");
  } catch (const OverflowError& e) {
    CHECK(e.last_finite_index() > 0);
    CHECK(e.last_finite_index() < 400);
    CHECK(std::isfinite(eval_pair(seq, 1e8, e.last_finite_index()).hi));
  }
}

TEST_CASE("custom range errors propagate") {
  const auto c = CoefficientSequence::custom({1.0, 1.0, 1.0}, {0.0, 0.0, 0.0});
  CHECK_NOTHROW(eval_pair(c, 0.5, 3));
  CHECK_THROWS_AS(eval_pair(c, 0.5, 4), OutOfRangeError);
  CHECK_THROWS_AS(transfer_product(c, 1, 3, 0.5), OutOfRangeError);
}
