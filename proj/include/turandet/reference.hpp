#pragma once

#include <optional>

#include "turandet/sequences.hpp"

namespace turandet {

/// |Γ(λ + ix)|^2 for λ > 0, through a Lanczos approximation of log Γ on the complex plane.
/// Depends on |x| only, so conjugate symmetry holds exactly.
double gamma_abs2(double lambda, double x);

/// log |Γ(λ + ix)| for λ > 0.
double log_gamma_abs(double lambda, double x);

/// |x|^t e^{-x^2} / Γ((1+t)/2).  DomainError at x = 0 when t < 0.
double genhermite_density(double t, double x);

/// Orthogonality density of the Meixner–Pollaczek recurrence as implemented in
/// CoefficientSequence (b_n = (n+λ)/tan φ):
///   (2 sin φ)^{2λ} / (2π Γ(2λ)) e^{(π-2φ)x} |Γ(λ + ix)|^2.
double mp_density(double lambda, double phi, double x);

/// Closed-form density bound to a family and its parameters.
class ReferenceDensity {
 public:
  /// Available for genhermite and meixnerpollaczek.
  static std::optional<ReferenceDensity> for_sequence(const CoefficientSequence& seq);

  Family family() const noexcept { return family_; }
  /// 1/Γ((1+t)/2) or (2 sin φ)^{2λ}/(2πΓ(2λ)).
  double normalization() const noexcept { return normalization_; }
  double operator()(double x) const;

 private:
  ReferenceDensity(Family f, double p0, double p1, double norm)
      : family_(f), p0_(p0), p1_(p1), normalization_(norm) {}
  Family family_;
  double p0_;
  double p1_;
  double normalization_;
};

}  // namespace turandet
