#include "sgp/bspline.hpp"

#include <algorithm>
#include <cmath>

namespace sgp::bspline {

namespace {
constexpr int kDegree = 3;
}

CubicBasis::CubicBasis(double a, double b, int n_basis) : a_(a), b_(b), n_basis_(n_basis) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw DomainError("CubicBasis: domain must satisfy a < b");
  }
  if (n_basis < 4) {
    throw DomainError("CubicBasis: cubic splines need at least 4 basis functions");
  }
  const int n_spans = n_basis - kDegree;
  spacing_ = (b - a) / n_spans;
  knots_.reserve(static_cast<std::size_t>(n_basis) + 4);
  for (int i = 0; i < kDegree; ++i) knots_.push_back(a);
  breaks_.reserve(static_cast<std::size_t>(n_spans) + 1);
  for (int i = 0; i <= n_spans; ++i) {
    const double t = (i == n_spans) ? b : a + spacing_ * i;
    knots_.push_back(t);
    breaks_.push_back(t);
  }
  for (int i = 0; i < kDegree; ++i) knots_.push_back(b);
}

int CubicBasis::find_span(double x) const {
  // Span index into the knot vector; valid spans are [degree, n_basis - 1].
  if (x >= b_) return n_basis_ - 1;
  if (x <= a_) return kDegree;
  const int i = static_cast<int>((x - a_) / spacing_);
  return std::min(kDegree + i, n_basis_ - 1);
}

CubicBasis::LocalEval CubicBasis::eval(double x) const {
  if (!std::isfinite(x) || x < a_ - 1e-12 || x > b_ + 1e-12) {
    throw DomainError("CubicBasis::eval: x outside the basis domain");
  }
  x = std::clamp(x, a_, b_);
  const int span = find_span(x);

  // Cox-de Boor triangle (The NURBS Book, A2.3) with derivative orders 0..2.
  double ndu[kDegree + 1][kDegree + 1];
  double left[kDegree + 1];
  double right[kDegree + 1];
  ndu[0][0] = 1.0;
  for (int j = 1; j <= kDegree; ++j) {
    left[j] = x - knots_[static_cast<std::size_t>(span + 1 - j)];
    right[j] = knots_[static_cast<std::size_t>(span + j)] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu[j][r] = right[r + 1] + left[j - r];
      const double temp = (ndu[j][r] == 0.0) ? 0.0 : ndu[r][j - 1] / ndu[j][r];
      ndu[r][j] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu[j][j] = saved;
  }

  LocalEval out;
  out.first = span - kDegree;
  for (int j = 0; j <= kDegree; ++j) out.value[static_cast<std::size_t>(j)] = ndu[j][kDegree];

  double ders[2][kDegree + 1];
  for (int r = 0; r <= kDegree; ++r) {
    double acoef[2][kDegree + 1] = {};
    int s1 = 0;
    int s2 = 1;
    acoef[0][0] = 1.0;
    for (int k = 1; k <= 2; ++k) {
      double d = 0.0;
      const int rk = r - k;
      const int pk = kDegree - k;
      if (r >= k) {
        const double den = ndu[pk + 1][rk];
        acoef[s2][0] = (den == 0.0) ? 0.0 : acoef[s1][0] / den;
        d = acoef[s2][0] * ndu[rk][pk];
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : kDegree - r;
      for (int j = j1; j <= j2; ++j) {
        const double den = ndu[pk + 1][rk + j];
        acoef[s2][j] = (den == 0.0) ? 0.0 : (acoef[s1][j] - acoef[s1][j - 1]) / den;
        d += acoef[s2][j] * ndu[rk + j][pk];
      }
      if (r <= pk) {
        const double den = ndu[pk + 1][r];
        acoef[s2][k] = (den == 0.0) ? 0.0 : -acoef[s1][k - 1] / den;
        d += acoef[s2][k] * ndu[r][pk];
      }
      ders[k - 1][r] = d;
      std::swap(s1, s2);
    }
  }
  for (int j = 0; j <= kDegree; ++j) {
    out.d1[static_cast<std::size_t>(j)] = ders[0][j] * kDegree;
    out.d2[static_cast<std::size_t>(j)] = ders[1][j] * kDegree * (kDegree - 1);
  }
  return out;
}

std::vector<double> CubicBasis::eval_all(double x, int deriv) const {
  std::vector<double> out(static_cast<std::size_t>(n_basis_), 0.0);
  const LocalEval e = eval(x);
  for (int j = 0; j < 4; ++j) {
    const int idx = e.first + j;
    if (idx < 0 || idx >= n_basis_) continue;
    const auto js = static_cast<std::size_t>(j);
    out[static_cast<std::size_t>(idx)] =
        (deriv == 0) ? e.value[js] : (deriv == 1 ? e.d1[js] : e.d2[js]);
  }
  return out;
}

}  // namespace sgp::bspline
