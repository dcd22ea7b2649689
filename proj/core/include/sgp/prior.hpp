#pragma once

#include <vector>

#include "sgp/params.hpp"

namespace sgp::prior {

/// Exponential prior on the predictive standard deviation sigma(h),
/// encoded by P(sigma(h) > u) = p, so the rate is -ln(p)/u. The unit h is
/// chosen by the analyst (e.g. one year); the prior is location-free
/// because the PSD itself is.
struct PsdPrior {
  double h;
  double u;
  double p;

  PsdPrior(double h_in, double u_in, double p_in) : h(h_in), u(u_in), p(p_in) {
    if (!std::isfinite(h) || h <= 0.0) throw DomainError("PsdPrior: h must be positive");
    if (!std::isfinite(u) || u <= 0.0) throw DomainError("PsdPrior: u must be positive");
    if (!std::isfinite(p) || p <= 0.0 || p >= 1.0) {
      throw DomainError("PsdPrior: p must lie in (0, 1)");
    }
  }

  double rate() const { return -std::log(p) / u; }
};

/// Scale factor from sigma(h) to sigma at frequency alpha:
///   sigma = sigma(h) * alpha / sqrt(h/2 - sin(2 alpha h)/(4 alpha)).
double psd_to_sigma_factor(double alpha, double h);

/// Rate of the induced exponential prior on sigma:
///   rate_sigma = rate_{sigma(h)} * sqrt(h/2 - sin(2 alpha h)/(4 alpha)) / alpha.
double to_sigma_rate(const PsdPrior& prior, double alpha);

/// Median ln(2)/lambda of the exponential sigma(h) prior.
double median_psd(const PsdPrior& prior);

/// Quantiles of an exponential distribution with the given rate, at
/// equally spaced probabilities excluding both tails: i/(n+1), i = 1..n.
/// Used to discretise a continuous sigma prior onto a finite grid.
std::vector<double> exponential_quantile_grid(double rate, int n);

}  // namespace sgp::prior
