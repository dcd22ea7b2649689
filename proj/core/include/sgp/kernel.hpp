#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sgp/params.hpp"

namespace sgp::kernel {

/// Covariance C(x1, x2) of the seasonal GP with zero initial conditions
/// at the origin. Arguments may be given in either order; the value is
/// symmetric. Both must be finite and nonnegative.
double covariance(const SgpParams& params, double x1, double x2);

/// Dense covariance matrix over a vector of nonnegative locations.
/// Symmetric positive semidefinite by construction.
Eigen::MatrixXd covariance_matrix(const SgpParams& params, const std::vector<double>& xs);

/// Marginal variance C(x, x); kept separate because it is used in hot loops.
double variance(const SgpParams& params, double x);

/// Predictive standard deviation sigma(h) = SD[g(x+h) | g(x), g'(x)]
///   = (sigma/alpha) * sqrt(h/2 - sin(2 alpha h) / (4 alpha)).
/// Location-free: it does not depend on x. Requires h > 0.
double psd(const SgpParams& params, double h);

}  // namespace sgp::kernel
