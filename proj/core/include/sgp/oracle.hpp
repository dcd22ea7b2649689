#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "sgp/params.hpp"

namespace sgp::oracle {

/// Composite Gauss-Legendre rule: `order` nodes per segment, nodes computed
/// by Newton iteration on the Legendre polynomials. Weights are positive
/// and sum to the interval length.
class QuadratureRule {
 public:
  explicit QuadratureRule(int order = 16);

  int order() const { return order_; }

  /// Integrate f over [lo, hi] split into `segments` equal pieces.
  double integrate(const std::function<double(double)>& f, double lo, double hi,
                   int segments) const;

  /// Integrate with a step-halving accuracy estimate; throws NumericError
  /// when the estimated error exceeds `tol`.
  double integrate_checked(const std::function<double(double)>& f, double lo,
                           double hi, int segments, double tol) const;

 private:
  int order_;
  std::vector<double> nodes_;    // on (-1, 1)
  std::vector<double> weights_;  // sum to 2
};

/// Brute-force covariance of the process from the white-noise integral
///   int_0^{x1} (sigma/alpha)^2 sin(alpha (x1 - t)) sin(alpha (x2 - t)) dt,
/// for x1 <= x2. Independent of the closed form it is used to check.
double cov_by_quadrature(const SgpParams& params, double x1, double x2, int segments);

/// Element-wise quadrature of the three innovation-covariance integrals
/// over [0, d]; returns the symmetric 2x2 matrix.
Eigen::Matrix2d noise_cov_by_quadrature(const SgpParams& params, double d, int segments);

/// Fundamental matrix of g'' = -alpha^2 g over time d via RK4 on the
/// first-order system; columns propagate the unit initial states. This is
/// the sigma = 0 oracle for the transition matrix.
Eigen::Matrix2d transition_by_ode(double alpha, double d, int steps);

struct DenseConditionResult {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

/// Textbook dense Bayesian linear-model conditioning: prior z ~ N(0, Q^-1),
/// data y = A z + e with e ~ N(0, noise_sd^2 I). Returns the exact
/// posterior mean and covariance by dense factorisation.
DenseConditionResult dense_condition(const Eigen::MatrixXd& prior_precision,
                                     const Eigen::MatrixXd& design,
                                     const Eigen::VectorXd& y, double noise_sd);

/// Log marginal likelihood of the same dense model, for checking the
/// sparse grid-node computation.
double dense_log_marginal(const Eigen::MatrixXd& prior_precision,
                          const Eigen::MatrixXd& design, const Eigen::VectorXd& y,
                          double noise_sd);

/// Quick self-consistency pass over the quadrature oracles; returns a list
/// of human-readable failures (empty when everything agrees).
std::vector<std::string> self_check();

}  // namespace sgp::oracle
