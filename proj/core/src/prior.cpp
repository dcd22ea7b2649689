#include "sgp/prior.hpp"

#include <cmath>

namespace sgp::prior {

double psd_to_sigma_factor(double alpha, double h) {
  if (!(alpha > 0.0)) throw DomainError("prior: alpha must be positive");
  if (!(h > 0.0)) throw DomainError("prior: h must be positive");
  const double radicand = 0.5 * h - std::sin(2.0 * alpha * h) / (4.0 * alpha);
  if (!(radicand > 0.0)) {
    throw DomainError("prior: nonpositive PSD radicand");
  }
  return alpha / std::sqrt(radicand);
}

double to_sigma_rate(const PsdPrior& prior, double alpha) {
  // sigma = factor * sigma(h) is a linear map, so the exponential law is
  // preserved with rate divided by the factor.
  return prior.rate() / psd_to_sigma_factor(alpha, prior.h);
}

double median_psd(const PsdPrior& prior) { return std::log(2.0) / prior.rate(); }

std::vector<double> exponential_quantile_grid(double rate, int n) {
  if (!(rate > 0.0)) throw DomainError("prior: rate must be positive");
  if (n < 1) throw DomainError("prior: grid size must be at least 1");
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const double prob = static_cast<double>(i) / (n + 1);
    grid[static_cast<std::size_t>(i - 1)] = -std::log1p(-prob) / rate;
  }
  return grid;
}

}  // namespace sgp::prior
