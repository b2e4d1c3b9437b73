#include "turandet/reference.hpp"

#include <fmt/format.h>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "turandet/errors.hpp"

namespace turandet {

namespace {

// Lanczos g = 7, n = 9 (Godfrey); relative error near 1e-15 for Re z ≥ 1/2.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};

// Re log Γ(z) for Re z ≥ 1/2.
double lanczos_log_abs(std::complex<double> z) {
  const std::complex<double> w = z - 1.0;
  std::complex<double> series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) series += kLanczos[i] / (w + static_cast<double>(i));
  const std::complex<double> t = w + kLanczosG + 0.5;
  const std::complex<double> log_t = std::log(t);
  return 0.5 * std::log(2.0 * std::numbers::pi) + std::real((w + 0.5) * log_t) - t.real() +
         std::log(std::abs(series));
}

}  // namespace

double log_gamma_abs(double lambda, double x) {
  if (!(lambda > 0.0)) throw DomainError(fmt::format("log_gamma_abs requires lambda > 0 (got {})", lambda));
  const double y = std::abs(x);
  // |Γ(λ+iy)| = |Γ(λ+1+iy)| / |λ+iy| shifts small real parts into the Lanczos range.
  double shift = 0.0;
  double re = lambda;
  while (re < 0.5) {
    shift += 0.5 * std::log(re * re + y * y);
    re += 1.0;
  }
  return lanczos_log_abs({re, y}) - shift;
}

double gamma_abs2(double lambda, double x) { return std::exp(2.0 * log_gamma_abs(lambda, x)); }

double genhermite_density(double t, double x) {
  if (!(t > -1.0)) throw DomainError(fmt::format("genhermite density requires t > -1 (got {})", t));
  if (x == 0.0 && t < 0.0) {
    throw DomainError(fmt::format("genhermite density with t = {} is singular at x = 0", t));
  }
  return std::pow(std::abs(x), t) * std::exp(-x * x) / std::tgamma((1.0 + t) / 2.0);
}

double mp_density(double lambda, double phi, double x) {
  if (!(lambda > 0.0)) throw DomainError("meixnerpollaczek density requires lambda > 0");
  if (!(phi > 0.0 && phi < std::numbers::pi)) throw DomainError("meixnerpollaczek density requires phi in (0, pi)");
  const double log_norm = 2.0 * lambda * std::log(2.0 * std::sin(phi)) -
                          std::log(2.0 * std::numbers::pi) - std::lgamma(2.0 * lambda);
  return std::exp(log_norm + (std::numbers::pi - 2.0 * phi) * x + 2.0 * log_gamma_abs(lambda, x));
}

std::optional<ReferenceDensity> ReferenceDensity::for_sequence(const CoefficientSequence& seq) {
  const auto& p = seq.params();
  switch (seq.family()) {
    case Family::GenHermite:
      return ReferenceDensity(Family::GenHermite, p[0], 0.0, 1.0 / std::tgamma((1.0 + p[0]) / 2.0));
    case Family::MeixnerPollaczek: {
      const double norm = std::pow(2.0 * std::sin(p[1]), 2.0 * p[0]) /
                          (2.0 * std::numbers::pi * std::tgamma(2.0 * p[0]));
      return ReferenceDensity(Family::MeixnerPollaczek, p[0], p[1], norm);
    }
    default: return std::nullopt;
  }
}

double ReferenceDensity::operator()(double x) const {
  if (family_ == Family::GenHermite) return genhermite_density(p0_, x);
  return mp_density(p0_, p1_, x);
}

}  // namespace turandet
