#pragma once

#include <cmath>

#include "sgp/errors.hpp"

namespace sgp {

/// Parameters of one seasonal Gaussian process: the frequency alpha
/// (radians per unit of x, so the period is 2*pi/alpha) and the
/// standard-deviation parameter sigma controlling how far sample paths
/// drift from an exact sinusoid.
///
/// alpha below 1e-8 is rejected rather than taking the alpha -> 0 limit,
/// which the process does not define. sigma = 0 is accepted as the
/// degenerate deterministic process.
struct SgpParams {
  double alpha;
  double sigma;

  SgpParams(double alpha_in, double sigma_in) : alpha(alpha_in), sigma(sigma_in) {
    validate();
  }

  void validate() const {
    if (!std::isfinite(alpha) || alpha < 1e-8) {
      throw DomainError("SgpParams: alpha must be finite and >= 1e-8");
    }
    if (!std::isfinite(sigma) || sigma < 0.0) {
      throw DomainError("SgpParams: sigma must be finite and >= 0");
    }
  }

  double period() const { return 2.0 * M_PI / alpha; }

  static SgpParams from_period(double period, double sigma) {
    if (!std::isfinite(period) || period <= 0.0) {
      throw DomainError("SgpParams: period must be finite and positive");
    }
    return SgpParams(2.0 * M_PI / period, sigma);
  }
};

/// The two functions spanning the null space of d^2/dx^2 + alpha^2:
/// cos(alpha x) and sin(alpha x). Used as global trend-of-phase columns
/// that relax the zero initial conditions at x = 0.
struct BoundaryBasis {
  double alpha;

  explicit BoundaryBasis(double alpha_in) : alpha(alpha_in) {
    if (!std::isfinite(alpha) || alpha <= 0.0) {
      throw DomainError("BoundaryBasis: alpha must be finite and positive");
    }
  }

  double cos_at(double x) const { return std::cos(alpha * x); }
  double sin_at(double x) const { return std::sin(alpha * x); }
};

}  // namespace sgp
