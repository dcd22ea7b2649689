#include "sgp/statespace.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <random>
#include <string>

namespace sgp::statespace {

namespace {

// Symmetric 2x2 inverse with eigenvalue-based condition guard.
Eigen::Matrix2d invert_noise_cov(const Eigen::Matrix2d& sigma, std::size_t interval) {
  const double tr = sigma(0, 0) + sigma(1, 1);
  const double det = sigma(0, 0) * sigma(1, 1) - sigma(0, 1) * sigma(1, 0);
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  const double lo = 0.5 * (tr - disc);
  const double hi = 0.5 * (tr + disc);
  if (!(lo > 0.0) || hi / lo > 1e12) {
    throw ConditioningError(
        "statespace: noise covariance numerically singular on interval " +
            std::to_string(interval) + " (spacing too small or sigma ~ 0)",
        static_cast<long>(interval));
  }
  Eigen::Matrix2d inv;
  inv << sigma(1, 1), -sigma(0, 1), -sigma(1, 0), sigma(0, 0);
  return inv / det;
}

}  // namespace

LocationGrid::LocationGrid(std::vector<double> locations) : s(std::move(locations)) {
  if (s.empty()) {
    throw DomainError("LocationGrid: needs at least one location");
  }
  d.reserve(s.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s[i]) || s[i] <= 0.0) {
      throw DomainError("LocationGrid: locations must be finite and positive");
    }
    if (s[i] <= prev) {
      throw DomainError("LocationGrid: locations must be strictly increasing");
    }
    d.push_back(s[i] - prev);
    prev = s[i];
  }
}

std::pair<std::vector<double>, std::vector<long>> merge_locations(
    const std::vector<double>& sorted_xs, double tol) {
  std::vector<double> merged;
  std::vector<long> index(sorted_xs.size(), -1);
  for (std::size_t i = 0; i < sorted_xs.size(); ++i) {
    const double x = sorted_xs[i];
    if (!std::isfinite(x) || x < 0.0) {
      throw DomainError("merge_locations: locations must be finite and >= 0");
    }
    if (i > 0 && x < sorted_xs[i - 1]) {
      throw DomainError("merge_locations: input must be sorted");
    }
    if (x <= tol) {
      continue;  // maps to the deterministic origin
    }
    if (merged.empty() || x - merged.back() > tol) {
      merged.push_back(x);
    }
    index[i] = static_cast<long>(merged.size()) - 1;
  }
  return {merged, index};
}

Eigen::Matrix2d transition(const SgpParams& params, double d) {
  if (!std::isfinite(d) || d <= 0.0) {
    throw DomainError("statespace::transition: d must be finite and positive");
  }
  const double a = params.alpha;
  const double c = std::cos(a * d);
  const double s = std::sin(a * d);
  Eigen::Matrix2d r;
  r << c, s / a, -a * s, c;
  return r;
}

Eigen::Matrix2d noise_covariance(const SgpParams& params, double d) {
  if (!std::isfinite(d) || d <= 0.0) {
    throw DomainError("statespace::noise_covariance: d must be finite and positive");
  }
  const double a = params.alpha;
  const double s2 = params.sigma * params.sigma;
  const double sin_ad = std::sin(a * d);
  const double sin_2ad = std::sin(2.0 * a * d);
  Eigen::Matrix2d cov;
  cov(0, 0) = (0.5 * d - sin_2ad / (4.0 * a)) / (a * a);
  cov(0, 1) = sin_ad * sin_ad / (2.0 * a * a);
  cov(1, 0) = cov(0, 1);
  cov(1, 1) = (2.0 * a * d + sin_2ad) / (4.0 * a);
  return s2 * cov;
}

StateSpaceChain::StateSpaceChain(SgpParams params, LocationGrid grid)
    : params_(params), grid_(std::move(grid)) {
  transitions_.reserve(grid_.size());
  noise_covs_.reserve(grid_.size());
  for (double di : grid_.d) {
    transitions_.push_back(transition(params_, di));
    noise_covs_.push_back(noise_covariance(params_, di));
  }
}

AugmentedPrecision assemble_precision(const StateSpaceChain& chain) {
  const std::size_t n = chain.size();
  std::vector<Eigen::Matrix2d> q(n);
  double log_det = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Matrix2d& sigma = chain.noise_covs()[i];
    q[i] = invert_noise_cov(sigma, i);
    log_det -= std::log(sigma.determinant());
  }

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(16 * n);
  auto add_block = [&](std::size_t bi, std::size_t bj, const Eigen::Matrix2d& block) {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        trips.emplace_back(static_cast<int>(2 * bi) + r, static_cast<int>(2 * bj) + c,
                           block(r, c));
      }
    }
  };

  for (std::size_t i = 0; i < n; ++i) {
    Eigen::Matrix2d diag = q[i];
    if (i + 1 < n) {
      const Eigen::Matrix2d& r_next = chain.transitions()[i + 1];
      diag += r_next.transpose() * q[i + 1] * r_next;
      const Eigen::Matrix2d off = -r_next.transpose() * q[i + 1];
      add_block(i, i + 1, off);
      add_block(i + 1, i, off.transpose());
    }
    add_block(i, i, diag);
  }

  AugmentedPrecision out;
  out.matrix.resize(static_cast<Eigen::Index>(2 * n), static_cast<Eigen::Index>(2 * n));
  out.matrix.setFromTriplets(trips.begin(), trips.end());
  out.matrix.makeCompressed();
  out.log_det = log_det;
  return out;
}

Eigen::MatrixXd sample_paths(const StateSpaceChain& chain, int n_samples,
                             std::uint64_t seed) {
  if (n_samples < 0) {
    throw DomainError("sample_paths: n_samples must be nonnegative");
  }
  const std::size_t n = chain.size();
  std::vector<Eigen::Matrix2d> chol(n);
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::LLT<Eigen::Matrix2d> llt(chain.noise_covs()[i]);
    if (llt.info() != Eigen::Success) {
      throw ConditioningError("sample_paths: Cholesky of noise covariance failed on interval " +
                                  std::to_string(i),
                              static_cast<long>(i));
    }
    chol[i] = llt.matrixL();
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd paths(n_samples, static_cast<Eigen::Index>(n));
  for (int s = 0; s < n_samples; ++s) {
    Eigen::Vector2d state = Eigen::Vector2d::Zero();
    for (std::size_t i = 0; i < n; ++i) {
      Eigen::Vector2d z(gauss(rng), gauss(rng));
      state = chain.transitions()[i] * state + chol[i] * z;
      paths(s, static_cast<Eigen::Index>(i)) = state(0);
    }
  }
  return paths;
}

ConditionResult condition_gaussian(const StateSpaceChain& chain,
                                   const std::vector<long>& observed_indices,
                                   const Eigen::VectorXd& y, double noise_sd) {
  if (!std::isfinite(noise_sd) || noise_sd <= 0.0) {
    throw DomainError("condition_gaussian: noise_sd must be finite and positive");
  }
  if (static_cast<Eigen::Index>(observed_indices.size()) != y.size()) {
    throw DomainError("condition_gaussian: observed_indices and y length mismatch");
  }
  const long n = static_cast<long>(chain.size());
  AugmentedPrecision prior = assemble_precision(chain);
  Eigen::SparseMatrix<double> post = prior.matrix;
  const double w = 1.0 / (noise_sd * noise_sd);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * n);
  for (Eigen::Index j = 0; j < y.size(); ++j) {
    const long idx = observed_indices[static_cast<std::size_t>(j)];
    if (idx < 0 || idx >= n) {
      throw DomainError("condition_gaussian: observation index out of range");
    }
    post.coeffRef(2 * idx, 2 * idx) += w;
    rhs(2 * idx) += w * y(j);
  }
  post.makeCompressed();

  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(post);
  if (llt.info() != Eigen::Success) {
    throw ConditioningError("condition_gaussian: posterior precision not positive definite");
  }

  ConditionResult out;
  out.mean = llt.solve(rhs);
  out.sd.resize(2 * n);
  // Marginal variances: diagonal of the inverse, one banded solve per state.
  Eigen::VectorXd unit = Eigen::VectorXd::Zero(2 * n);
  for (Eigen::Index i = 0; i < 2 * n; ++i) {
    unit(i) = 1.0;
    out.sd(i) = std::sqrt(llt.solve(unit)(i));
    unit(i) = 0.0;
  }
  return out;
}

}  // namespace sgp::statespace
