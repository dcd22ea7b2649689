#include "sgp/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace sgp::kernel {

namespace {

void check_location(double x, const char* name) {
  if (!std::isfinite(x) || x < 0.0) {
    throw DomainError(std::string("kernel: ") + name + " must be finite and >= 0");
  }
}

}  // namespace

double covariance(const SgpParams& params, double x1, double x2) {
  check_location(x1, "x1");
  check_location(x2, "x2");
  const double lo = std::min(x1, x2);
  const double hi = std::max(x1, x2);
  const double a = params.alpha;
  const double ratio = params.sigma / a;
  return ratio * ratio *
         (0.5 * lo * std::cos(a * (hi - lo)) -
          std::cos(a * hi) * std::sin(a * lo) / (2.0 * a));
}

double variance(const SgpParams& params, double x) {
  check_location(x, "x");
  const double a = params.alpha;
  const double ratio = params.sigma / a;
  return ratio * ratio * (0.5 * x - std::sin(2.0 * a * x) / (4.0 * a));
}

Eigen::MatrixXd covariance_matrix(const SgpParams& params, const std::vector<double>& xs) {
  const Eigen::Index n = static_cast<Eigen::Index>(xs.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double c = covariance(params, xs[static_cast<std::size_t>(i)],
                                  xs[static_cast<std::size_t>(j)]);
      m(i, j) = c;
      m(j, i) = c;
    }
  }
  return m;
}

double psd(const SgpParams& params, double h) {
  if (!std::isfinite(h) || h <= 0.0) {
    throw DomainError("kernel::psd: h must be finite and positive");
  }
  const double a = params.alpha;
  const double radicand = 0.5 * h - std::sin(2.0 * a * h) / (4.0 * a);
  if (radicand <= 0.0) {
    // Strictly positive for h > 0 in exact arithmetic; guard the fp edge.
    throw DomainError("kernel::psd: nonpositive radicand");
  }
  return params.sigma / a * std::sqrt(radicand);
}

}  // namespace sgp::kernel
