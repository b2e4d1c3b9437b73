#pragma once

#include <cstddef>

#include "turandet/sequences.hpp"

namespace turandet {

/// λ_n(x) = [Σ_{k=0}^{n} p_k(x)^2]^{-1} together with Σ_{k=0}^{n} 1/a_k.
struct ChristoffelValue {
  double x = 0.0;
  std::size_t n = 0;
  double lambda = 1.0;
  double inv_a_sum = 0.0;
};

ChristoffelValue christoffel_lambda(const CoefficientSequence& seq, std::size_t n, double x);

/// λ_n(x) Σ_{k≤n} 1/a_k / (2π), which tends to μ'(x) under the symmetric regular / critical
/// hypotheses. Convergence is Cesàro-slow.
double christoffel_density(const CoefficientSequence& seq, std::size_t n, double x);

/// 1 / (π a_n (p_{n-1}(x)^2 + p_n(x)^2)). Computed unconditionally; whether it converges to μ'
/// depends on the sequence (odd N regular or even N critical with x ≠ 0).
double pair_density(const CoefficientSequence& seq, std::size_t n, double x);

}  // namespace turandet
