#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "turandet/errors.hpp"
#include "turandet/oracle.hpp"
#include "turandet/recurrence.hpp"
#include "turandet/reference.hpp"

using namespace turandet;
using std::numbers::pi;

TEST_CASE("small rules by hand") {
  const auto one = golub_welsch(CoefficientSequence::meixner_pollaczek(0.5, pi / 3), 1);
  REQUIRE(one.nodes.size() == 1);
  CHECK(one.nodes[0] == doctest::Approx(0.5 / std::tan(pi / 3)));
  CHECK(one.weights[0] == 1.0);

  const auto two = golub_welsch(CoefficientSequence::gen_hermite(0.0), 2);
  CHECK(two.nodes[0] == doctest::Approx(-1 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(two.nodes[1] == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(two.weights[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(two.weights[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK_THROWS_AS(golub_welsch(CoefficientSequence::gen_hermite(0.0), 0), ArgumentError);
  CHECK_THROWS_AS(golub_welsch(CoefficientSequence::custom({1.0, 1.0}, {0.0, 0.0}), 4), OutOfRangeError);
}

TEST_CASE("agreement with a dense eigensolver") {
  const std::vector<CoefficientSequence> fams{
      CoefficientSequence::gen_hermite(0.5), CoefficientSequence::meixner_pollaczek(0.5, pi / 4),
      CoefficientSequence::freud_asymptotic(4.0), CoefficientSequence::power_pair(0.8)};
  for (const auto& seq : fams) {
    const std::size_t m = 60;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      J(i, i) = seq.b(i);
      if (i + 1 < m) J(i, i + 1) = J(i + 1, i) = seq.a(i);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    const auto rule = golub_welsch(seq, m);
    const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
    for (std::size_t i = 0; i < m; ++i) {
      const auto k = static_cast<Eigen::Index>(i);
      CHECK(std::abs(rule.nodes[i] - es.eigenvalues()(k)) < 1e-12 * scale);
      const double w = es.eigenvectors()(0, k) * es.eigenvectors()(0, k);
      CHECK(std::abs(rule.weights[i] - w) < 1e-12);
    }
  }
}

TEST_CASE("rule invariants") {
  const std::vector<CoefficientSequence> fams{
      CoefficientSequence::gen_hermite(-0.5), CoefficientSequence::gen_hermite(1.0),
      CoefficientSequence::meixner_pollaczek(1.0, pi / 3), CoefficientSequence::freud_asymptotic(4.0),
      CoefficientSequence::power_pair_shift(0.7)};
  for (const auto& seq : fams) {
    for (std::size_t m : {5u, 20u, 50u}) {
      const auto rule = golub_welsch(seq, m);
      double total = 0;
      for (double w : rule.weights) {
        CHECK(w > 0);
        total += w;
      }
      CHECK(std::abs(total - 1) < 1e-12);
      for (std::size_t i = 1; i < m; ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);

      // Σ w_i p_j(x_i) p_k(x_i) = δ_jk
      std::vector<std::vector<PolyPair>> streams;
      for (double x : rule.nodes) streams.push_back(eval_stream(seq, x, m - 1));
      for (std::size_t j = 0; j < m; j += 3) {
        for (std::size_t k = j; k < m; k += 2) {
          double s = 0;
          for (std::size_t i = 0; i < m; ++i) s += rule.weights[i] * streams[i][j].hi * streams[i][k].hi;
          CHECK(std::abs(s - (j == k ? 1.0 : 0.0)) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("nodes interlace") {
  for (const auto& seq : {CoefficientSequence::gen_hermite(0.5), CoefficientSequence::meixner_pollaczek(0.5, pi / 4),
                          CoefficientSequence::freud_asymptotic(4.0)}) {
    for (std::size_t m = 1; m < 50; m += 4) {
      const auto a = golub_welsch(seq, m), b = golub_welsch(seq, m + 1);
      for (std::size_t i = 0; i < m; ++i) {
        CHECK(b.nodes[i] < a.nodes[i]);
        CHECK(a.nodes[i] < b.nodes[i + 1]);
      }
    }
  }
}

TEST_CASE("cdf of the rule") {
  const auto rule = golub_welsch(CoefficientSequence::gen_hermite(0.0), 2);
  CHECK(rule.cdf(-1.0, -0.8) == 0.0);
  CHECK(rule.cdf(-1.0, 0.0) == doctest::Approx(0.5));
  CHECK(rule.cdf(-1.0, 1.0) == doctest::Approx(1.0));
  CHECK(rule.cdf(0.0, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("cdf_compare") {
  SUBCASE("identical step functions") {
    const auto rule = golub_welsch(CoefficientSequence::meixner_pollaczek(0.5, pi / 2), 40);
    CHECK(cdf_compare(rule, rule, {-3.0, 3.0}) == 0.0);
  }
  SUBCASE("reference densities") {
    const auto gh = CoefficientSequence::gen_hermite(0.0);
    const auto mp = CoefficientSequence::meixner_pollaczek(0.5, pi / 2);
    const auto ghd = [](double x) { return genhermite_density(0.0, x); };
    const auto mpd = [](double x) { return mp_density(0.5, pi / 2, x); };
    const double gh200 = cdf_compare(golub_welsch(gh, 200), ghd, {-3.0, 3.0}, 2001);
    const double mp200 = cdf_compare(golub_welsch(mp, 200), mpd, {-2.0, 2.0}, 2001);
    CHECK(gh200 <= 0.02);
    CHECK(mp200 <= 0.02);
    CHECK(cdf_compare(golub_welsch(gh, 50), ghd, {-3.0, 3.0}, 2001) > gh200);
    CHECK(cdf_compare(golub_welsch(mp, 50), mpd, {-2.0, 2.0}, 2001) > mp200);
  }
  SUBCASE("the comparison points are the gap midpoints") {
    const auto rule = golub_welsch(CoefficientSequence::gen_hermite(0.0), 4);
    const auto pts = comparison_points(rule, {-10.0, 10.0});
    REQUIRE(pts.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(pts[i] == doctest::Approx((rule.nodes[i] + rule.nodes[i + 1]) / 2));
    const auto fallback = comparison_points(rule, {rule.nodes[0] + 1e-9, rule.nodes[0] + 2e-9});
    REQUIRE(fallback.size() == 1);
    CHECK(fallback[0] == rule.nodes[0] + 2e-9);
  }
  SUBCASE("a wrong density is detected") {
    const auto rule = golub_welsch(CoefficientSequence::gen_hermite(0.0), 100);
    const auto shifted = [](double x) { return genhermite_density(0.0, x - 0.3); };
    CHECK(cdf_compare(rule, shifted, {-3.0, 3.0}, 1001) > 0.1);
  }
}
