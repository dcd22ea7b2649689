#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <utility>
#include <vector>

#include "sgp/params.hpp"

namespace sgp::statespace {

/// Strictly increasing positive locations s_1 < ... < s_n together with
/// the spacings d_1 = s_1, d_i = s_i - s_{i-1}. The origin itself is not a
/// location: the process starts at 0 with g(0) = g'(0) = 0.
struct LocationGrid {
  std::vector<double> s;
  std::vector<double> d;

  explicit LocationGrid(std::vector<double> locations);

  std::size_t size() const { return s.size(); }
};

/// Merge near-duplicate sorted locations (closer than `tol`) so that
/// repeated observations share one latent value. Returns the merged grid
/// values and, for each input, the index of its merged representative.
/// Inputs at (or within tol of) zero map to index -1: the process is
/// deterministically zero there.
std::pair<std::vector<double>, std::vector<long>> merge_locations(
    const std::vector<double>& sorted_xs, double tol = 1e-10);

/// Exact transition matrix of the augmented state (g, g') over a step d:
///   [[cos(a d), sin(a d)/a], [-a sin(a d), cos(a d)]].
/// Has unit determinant for every d.
Eigen::Matrix2d transition(const SgpParams& params, double d);

/// Covariance of the innovation accumulated over a step d:
///   sigma^2 [[ (d/2 - sin(2 a d)/(4a)) / a^2,  sin^2(a d)/(2 a^2) ],
///            [ sin^2(a d)/(2 a^2),             (2 a d + sin(2 a d))/(4a) ]].
/// Symmetric positive definite for d > 0 (and sigma > 0).
Eigen::Matrix2d noise_covariance(const SgpParams& params, double d);

/// Per-interval transition and noise matrices for the augmented Markov
/// chain over a grid. Index i covers the step ending at s_i; index 0 is the
/// step from the origin, where the zero initial conditions make the first
/// state exactly N(0, Sigma_0).
class StateSpaceChain {
 public:
  StateSpaceChain(SgpParams params, LocationGrid grid);

  const SgpParams& params() const { return params_; }
  const LocationGrid& grid() const { return grid_; }
  const std::vector<Eigen::Matrix2d>& transitions() const { return transitions_; }
  const std::vector<Eigen::Matrix2d>& noise_covs() const { return noise_covs_; }
  std::size_t size() const { return grid_.size(); }

 private:
  SgpParams params_;
  LocationGrid grid_;
  std::vector<Eigen::Matrix2d> transitions_;
  std::vector<Eigen::Matrix2d> noise_covs_;
};

/// Block-tridiagonal precision of the interleaved augmented vector
/// [g(s_1), g'(s_1), g(s_2), g'(s_2), ...]. Bandwidth <= 3; the inverse
/// restricted to the g coordinates reproduces the exact covariance matrix.
struct AugmentedPrecision {
  Eigen::SparseMatrix<double> matrix;  // 2n x 2n, symmetric
  double log_det;                      // sum of -log det(Sigma_i)

  Eigen::Index dim() const { return matrix.rows(); }
};

/// Assemble the augmented precision from the Markov factorisation of the
/// joint density: diagonal blocks Q_i + R_{i+1}^T Q_{i+1} R_{i+1} (last
/// block Q_n), off-diagonal blocks -R_{i+1}^T Q_{i+1}, with Q_i the
/// closed-form 2x2 inverse of Sigma_i. Throws ConditioningError, naming the
/// interval, when some Sigma_i has condition number above 1e12.
AugmentedPrecision assemble_precision(const StateSpaceChain& chain);

/// Draw sample paths by forward simulation of the Markov chain from the
/// zero initial state. Returns an (n_samples x n) matrix of g values.
/// Deterministic for a fixed seed.
Eigen::MatrixXd sample_paths(const StateSpaceChain& chain, int n_samples,
                             std::uint64_t seed);

struct ConditionResult {
  Eigen::VectorXd mean;  // length 2n, interleaved (g, g') states
  Eigen::VectorXd sd;    // marginal posterior SD per state
};

/// Exact Gaussian conditioning on observations y_j = g(s_{idx_j}) + e_j,
/// e_j ~ N(0, noise_sd^2): posterior precision Q_aug + A^T A / noise_sd^2
/// with A selecting observed g coordinates. Returns posterior mean and
/// per-coordinate SD over all 2n states.
ConditionResult condition_gaussian(const StateSpaceChain& chain,
                                   const std::vector<long>& observed_indices,
                                   const Eigen::VectorXd& y, double noise_sd);

}  // namespace sgp::statespace
