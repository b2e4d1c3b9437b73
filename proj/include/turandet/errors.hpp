#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace turandet {

/// Base of every error thrown by the library. The CLI maps these to exit status 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Index past the end of a finite (custom) coefficient table.
class OutOfRangeError : public Error {
 public:
  OutOfRangeError(const std::string& what, std::size_t index, std::size_t size)
      : Error(what), index_(index), size_(size) {}
  std::size_t index() const noexcept { return index_; }
  std::size_t size() const noexcept { return size_; }

 private:
  std::size_t index_;
  std::size_t size_;
};

/// Parameters or arguments outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed input on the caller side (empty lists, M < N, bad grids, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Coefficient file could not be parsed. `row` is 1-based and counts the header line.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t row) : Error(what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// Limit estimation did not settle inside the requested window.
class DiagnosticError : public Error {
 public:
  DiagnosticError(const std::string& what, double deviation)
      : Error(what), deviation_(deviation) {}
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

/// Wrong regime: inadmissible critical q, N = 1 in critical mode, mode mismatch.
class ModeError : public Error {
 public:
  using Error::Error;
};

/// An estimator hypothesis is violated (e.g. discr F >= 0 in the regular regime).
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// The recurrence left the finite range. `last_finite_index` is the largest k with p_k finite.
class OverflowError : public Error {
 public:
  OverflowError(const std::string& what, std::size_t last_finite_index)
      : Error(what), last_finite_index_(last_finite_index) {}
  std::size_t last_finite_index() const noexcept { return last_finite_index_; }

 private:
  std::size_t last_finite_index_;
};

/// The scaled Turán determinant is numerically zero at this point.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Iterative numerical method failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Requested combination is not supported (e.g. error table for a family without a reference).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace turandet
