#pragma once

#include <array>
#include <vector>

#include "sgp/errors.hpp"

namespace sgp::bspline {

/// Cubic B-spline basis on an open (clamped) uniform knot vector over
/// [a, b]: boundary knots repeated four times, n_basis - 4 interior knots
/// equally spaced. At any x at most four basis functions are nonzero.
class CubicBasis {
 public:
  CubicBasis(double a, double b, int n_basis);

  double a() const { return a_; }
  double b() const { return b_; }
  int size() const { return n_basis_; }
  double spacing() const { return spacing_; }
  const std::vector<double>& knots() const { return knots_; }

  /// Distinct knot values, i.e. the quadrature span boundaries.
  const std::vector<double>& breakpoints() const { return breaks_; }

  /// Values and first two derivatives of the four basis functions that are
  /// nonzero at x. `first` is the global index of the first of them.
  struct LocalEval {
    int first;
    std::array<double, 4> value;
    std::array<double, 4> d1;
    std::array<double, 4> d2;
  };
  LocalEval eval(double x) const;

  /// Dense evaluation of every basis function (mostly for tests/oracles).
  std::vector<double> eval_all(double x, int deriv = 0) const;

 private:
  int find_span(double x) const;

  double a_;
  double b_;
  int n_basis_;
  double spacing_;
  std::vector<double> knots_;
  std::vector<double> breaks_;
};

}  // namespace sgp::bspline
