#pragma once

#include <stdexcept>
#include <string>

namespace sgp {

/// Invalid argument values (negative locations, non-finite inputs, bad flags).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A matrix that should be positive definite is numerically singular or
/// indefinite. Carries the offending index (interval, pivot) when known.
class ConditioningError : public std::runtime_error {
 public:
  explicit ConditioningError(const std::string& what, long index = -1)
      : std::runtime_error(what), index_(index) {}
  long index() const noexcept { return index_; }

 private:
  long index_;
};

/// Non-finite intermediate value or a quadrature that failed its own
/// step-halving accuracy check.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Structural model problems (collinear design, empty grid, size mismatch).
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input files. Row/column are 1-based; 0 means not applicable.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long row = 0, long column = 0)
      : std::runtime_error(what), row_(row), column_(column) {}
  long row() const noexcept { return row_; }
  long column() const noexcept { return column_; }

 private:
  long row_;
  long column_;
};

/// File-system failures, reported with the path involved.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sgp
