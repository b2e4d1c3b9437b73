#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "turandet/sequences.hpp"

namespace turandet {

struct Vec2 {
  double first = 0.0;
  double second = 0.0;
};

/// Row-major 2×2 real matrix.
struct Mat2 {
  std::array<double, 4> m{1.0, 0.0, 0.0, 1.0};

  static constexpr Mat2 identity() { return Mat2{}; }
  static constexpr Mat2 of(double m00, double m01, double m10, double m11) {
    return Mat2{{m00, m01, m10, m11}};
  }

  constexpr double operator()(int row, int col) const { return m[static_cast<std::size_t>(2 * row + col)]; }
  constexpr double trace() const { return m[0] + m[3]; }
  constexpr double det() const { return m[0] * m[3] - m[1] * m[2]; }

  friend constexpr Mat2 operator*(const Mat2& x, const Mat2& y) {
    return of(x.m[0] * y.m[0] + x.m[1] * y.m[2], x.m[0] * y.m[1] + x.m[1] * y.m[3],
              x.m[2] * y.m[0] + x.m[3] * y.m[2], x.m[2] * y.m[1] + x.m[3] * y.m[3]);
  }
  friend constexpr Vec2 operator*(const Mat2& x, const Vec2& v) {
    return {x.m[0] * v.first + x.m[1] * v.second, x.m[2] * v.first + x.m[3] * v.second};
  }
  friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

/// (p_{n-1}(x), p_n(x)) at index n.
struct PolyPair {
  std::size_t n = 0;
  double lo = 0.0;  // p_{n-1}
  double hi = 1.0;  // p_n
  double x = 0.0;

  Vec2 vec() const { return {lo, hi}; }
};

/// Values with magnitude above this are treated as overflow.
inline constexpr double kOverflowLimit = 1e300;

/// Single-consumer forward pass of the three-term recurrence.
///
/// Starts at n = 0 with (p_{-1}, p_0) = (0, 1); each advance() moves to n + 1 using
///   p_{n+1} = ((x - b_n) p_n - a_{n-1} p_{n-1}) / a_n.
class RecurrenceStepper {
 public:
  RecurrenceStepper(const CoefficientSequence& seq, double x) : seq_(&seq), pair_{0, 0.0, 1.0, x} {}

  const PolyPair& current() const noexcept { return pair_; }

  /// Throws OverflowError when p_{n+1} leaves the finite range.
  const PolyPair& advance();

  /// a_{n-1} of the most recent step (1 before the first step).
  double previous_a() const noexcept { return a_prev_; }

 private:
  const CoefficientSequence* seq_;
  PolyPair pair_;
  double a_prev_ = 1.0;  // a_{n-1}; a_{-1} multiplies p_{-1} = 0
};

/// B_n(x) = [[0, 1], [-a_{n-1}/a_n, (x - b_n)/a_n]].  At n = 0 the convention a_{-1} = 1 is used,
/// which is harmless because B_0 only ever acts on vectors with p_{-1} = 0.
Mat2 transfer_matrix(const CoefficientSequence& seq, std::size_t n, double x);

/// X_n(x) = B_{n+N-1}(x) ⋯ B_n(x), later indices on the left.
Mat2 transfer_product(const CoefficientSequence& seq, std::size_t n, std::size_t N, double x);

PolyPair eval_pair(const CoefficientSequence& seq, double x, std::size_t n);

/// Pairs for n = 0..n_max from one forward pass.
std::vector<PolyPair> eval_stream(const CoefficientSequence& seq, double x, std::size_t n_max);

}  // namespace turandet
