#include "sgp/fem.hpp"

#include <cmath>
#include <string>

#include "sgp/kernel.hpp"

namespace sgp::fem {

namespace {

// 12-node Gauss-Legendre rule on [-1, 1]. Exact for the polynomial part of
// the span integrands; the trig damping adds < 1e-15 relative error while
// the knot spacing stays below about half a period.
constexpr int kQuadNodes = 12;
constexpr double kQuadX[kQuadNodes] = {
    -9.81560634246719244e-01, -9.04117256370474798e-01, -7.69902674194304693e-01,
    -5.87317954286617483e-01, -3.67831498998180184e-01, -1.25233408511468913e-01,
    +1.25233408511468913e-01, +3.67831498998180184e-01, +5.87317954286617483e-01,
    +7.69902674194304693e-01, +9.04117256370474798e-01, +9.81560634246719244e-01};
constexpr double kQuadW[kQuadNodes] = {
    4.71753363865120220e-02, 1.06939325995318885e-01, 1.60078328543346110e-01,
    2.03167426723065647e-01, 2.33492536538354639e-01, 2.49147045813402690e-01,
    2.49147045813402690e-01, 2.33492536538354639e-01, 2.03167426723065647e-01,
    1.60078328543346110e-01, 1.06939325995318885e-01, 4.71753363865120220e-02};

struct RawEval {
  int count = 0;
  int raw[12];
  double value[12];
  double d1[12];
  double d2[12];
};

// Values and derivatives of every nonzero *family* function at x, indexed
// by raw position (before boundary dropping).
RawEval raw_eval(const bspline::CubicBasis& engine, BasisFamily family, double alpha,
                 double x) {
  const auto base = engine.eval(x);
  RawEval out;
  const int r = engine.size();
  auto push = [&](int raw, double v, double g1, double g2) {
    out.raw[out.count] = raw;
    out.value[out.count] = v;
    out.d1[out.count] = g1;
    out.d2[out.count] = g2;
    ++out.count;
  };
  for (int j = 0; j < 4; ++j) {
    const int idx = base.first + j;
    if (idx < 0 || idx >= r) continue;
    const auto js = static_cast<std::size_t>(j);
    push(idx, base.value[js], base.d1[js], base.d2[js]);
  }
  if (family == BasisFamily::CubicBSpline) return out;

  const double c = std::cos(alpha * x);
  const double s = std::sin(alpha * x);
  const int plain = out.count;
  for (int j = 0; j < plain; ++j) {
    const double v = out.value[j];
    const double g1 = out.d1[j];
    const double g2 = out.d2[j];
    // (b cos)'' = b'' cos - 2 a b' sin - a^2 b cos, and likewise for sin.
    push(out.raw[j] + r, v * c, g1 * c - alpha * v * s,
         g2 * c - 2.0 * alpha * g1 * s - alpha * alpha * v * c);
    push(out.raw[j] + 2 * r, v * s, g1 * s + alpha * v * c,
         g2 * s + 2.0 * alpha * g1 * c - alpha * alpha * v * s);
  }
  return out;
}

}  // namespace

BasisSet::BasisSet(BasisFamily family, const KnotGrid& grid, double alpha)
    : family_(family),
      grid_(grid),
      alpha_(alpha),
      engine_(grid.a, grid.b, grid.r) {
  if (grid.r < 4) {
    throw DomainError("build_basis: r must be at least 4");
  }
  if (family == BasisFamily::SeasonalBSpline && !(alpha > 0.0)) {
    throw DomainError("build_basis: SeasonalBSpline needs alpha > 0");
  }
  const int nominal = nominal_size();
  raw_to_col_.assign(static_cast<std::size_t>(nominal), -1);

  const bool constrain = grid.a <= 1e-12;
  std::vector<bool> keep(static_cast<std::size_t>(nominal), true);
  if (constrain) {
    const RawEval at0 = raw_eval(engine_, family_, alpha_, grid.a);
    for (int j = 0; j < at0.count; ++j) {
      if (std::abs(at0.value[j]) > 1e-12 || std::abs(at0.d1[j]) > 1e-12) {
        keep[static_cast<std::size_t>(at0.raw[j])] = false;
      }
    }
  }
  for (int raw = 0; raw < nominal; ++raw) {
    if (!keep[static_cast<std::size_t>(raw)]) continue;
    raw_to_col_[static_cast<std::size_t>(raw)] = static_cast<int>(active_.size());
    active_.push_back(raw);
  }
}

int BasisSet::nominal_size() const {
  return family_ == BasisFamily::CubicBSpline ? grid_.r : 3 * grid_.r;
}

BasisSet::LocalEval BasisSet::eval(double x) const {
  const RawEval raw = raw_eval(engine_, family_, alpha_, x);
  LocalEval out;
  for (int j = 0; j < raw.count; ++j) {
    const int col = raw_to_col_[static_cast<std::size_t>(raw.raw[j])];
    if (col < 0) continue;
    out.col[out.count] = col;
    out.value[out.count] = raw.value[j];
    out.d2[out.count] = raw.d2[j];
    ++out.count;
  }
  return out;
}

double BasisSet::value_at(int col, double x) const {
  const LocalEval e = eval(x);
  for (int j = 0; j < e.count; ++j) {
    if (e.col[j] == col) return e.value[j];
  }
  return 0.0;
}

double BasisSet::second_derivative_at(int col, double x) const {
  const LocalEval e = eval(x);
  for (int j = 0; j < e.count; ++j) {
    if (e.col[j] == col) return e.d2[j];
  }
  return 0.0;
}

BasisSet build_basis(BasisFamily family, double a, double b, int r, double alpha) {
  return BasisSet(family, KnotGrid{a, b, r}, alpha);
}

GcmMatrices assemble_gcm(const BasisSet& basis) {
  const int k = basis.size();
  std::vector<Eigen::Triplet<double>> tg;
  std::vector<Eigen::Triplet<double>> tc;
  std::vector<Eigen::Triplet<double>> tm;

  const auto& breaks = basis.engine().breakpoints();
  for (std::size_t span = 0; span + 1 < breaks.size(); ++span) {
    const double lo = breaks[span];
    const double hi = breaks[span + 1];
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    double gl[12][12] = {};
    double cl[12][12] = {};
    double ml[12][12] = {};
    int cols[12];
    int count = 0;
    for (int q = 0; q < kQuadNodes; ++q) {
      const double x = mid + half * kQuadX[q];
      const double w = half * kQuadW[q];
      const BasisSet::LocalEval e = basis.eval(x);
      if (!std::isfinite(w)) {
        throw NumericError("assemble_gcm: non-finite quadrature weight");
      }
      count = e.count;
      for (int i = 0; i < e.count; ++i) {
        cols[i] = e.col[i];
        if (!std::isfinite(e.value[i]) || !std::isfinite(e.d2[i])) {
          throw NumericError("assemble_gcm: non-finite integrand");
        }
        for (int j = 0; j < e.count; ++j) {
          gl[i][j] += w * e.value[i] * e.value[j];
          cl[i][j] += w * e.d2[i] * e.d2[j];
          ml[i][j] += w * (e.value[i] * e.d2[j] + e.d2[i] * e.value[j]);
        }
      }
    }
    for (int i = 0; i < count; ++i) {
      for (int j = 0; j < count; ++j) {
        tg.emplace_back(cols[i], cols[j], gl[i][j]);
        tc.emplace_back(cols[i], cols[j], cl[i][j]);
        tm.emplace_back(cols[i], cols[j], ml[i][j]);
      }
    }
  }

  GcmMatrices out;
  out.G.resize(k, k);
  out.C.resize(k, k);
  out.M.resize(k, k);
  out.G.setFromTriplets(tg.begin(), tg.end());
  out.C.setFromTriplets(tc.begin(), tc.end());
  out.M.setFromTriplets(tm.begin(), tm.end());
  out.G.makeCompressed();
  out.C.makeCompressed();
  out.M.makeCompressed();
  return out;
}

WeightLaw assemble_T(const BasisSet& basis, double alpha) {
  if (!(alpha > 0.0)) {
    throw DomainError("assemble_T: alpha must be positive");
  }
  const GcmMatrices gcm = assemble_gcm(basis);
  WeightLaw law;
  law.T = (std::pow(alpha, 4) * gcm.G + gcm.C + alpha * alpha * gcm.M).pruned();
  law.T.makeCompressed();
  law.chol = std::make_shared<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>>();
  law.chol->compute(law.T);
  if (law.chol->info() != Eigen::Success) {
    // Locate the offending pivot for the error message.
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(law.T);
    long pivot = -1;
    if (ldlt.info() == Eigen::Success) {
      const Eigen::VectorXd d = ldlt.vectorD();
      for (Eigen::Index i = 0; i < d.size(); ++i) {
        if (!(d(i) > 0.0)) {
          pivot = i;
          break;
        }
      }
    }
    throw ConditioningError(
        "assemble_T: weight precision not positive definite (pivot " +
            std::to_string(pivot) +
            "); the damped basis is numerically dependent, use a larger r",
        pivot);
  }
  const Eigen::VectorXd diag =
      law.chol->matrixL().toSparse().diagonal();
  law.log_det = 2.0 * diag.array().log().sum();
  return law;
}

Eigen::SparseMatrix<double> design_matrix(const BasisSet& basis,
                                          const std::vector<double>& xs) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(xs.size() * 12);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const BasisSet::LocalEval e = basis.eval(xs[i]);
    for (int j = 0; j < e.count; ++j) {
      if (e.value[j] != 0.0) {
        trips.emplace_back(static_cast<int>(i), e.col[j], e.value[j]);
      }
    }
  }
  Eigen::SparseMatrix<double> phi(static_cast<Eigen::Index>(xs.size()), basis.size());
  phi.setFromTriplets(trips.begin(), trips.end());
  phi.makeCompressed();
  return phi;
}

Eigen::MatrixXd approx_covariance(const BasisSet& basis, const WeightLaw& law,
                                  double sigma, const std::vector<double>& xs) {
  const Eigen::SparseMatrix<double> phi = design_matrix(basis, xs);
  const Eigen::MatrixXd solved = law.solve(Eigen::MatrixXd(phi.transpose()));
  Eigen::MatrixXd cov = phi * solved;
  cov = 0.5 * (cov + cov.transpose());  // symmetrise fp noise
  return sigma * sigma * cov;
}

std::vector<CurvePoint> correlation_error_curve(BasisFamily family, double alpha,
                                                double a, double b,
                                                const std::vector<int>& k_values,
                                                double reference_point,
                                                double eval_lo, double eval_hi,
                                                int n_eval) {
  if (!(reference_point > a && reference_point < b)) {
    throw DomainError("correlation_error_curve: reference point must be interior");
  }
  if (n_eval < 2 || !(eval_lo < eval_hi) || eval_lo < a || eval_hi > b) {
    throw DomainError("correlation_error_curve: bad evaluation grid");
  }

  std::vector<double> xs(static_cast<std::size_t>(n_eval) + 1);
  for (int i = 0; i < n_eval; ++i) {
    xs[static_cast<std::size_t>(i)] =
        eval_lo + (eval_hi - eval_lo) * i / (n_eval - 1);
  }
  xs.back() = reference_point;

  const SgpParams params(alpha, 1.0);
  std::vector<double> true_corr(static_cast<std::size_t>(n_eval));
  const double ref_sd = std::sqrt(kernel::variance(params, reference_point));
  for (int i = 0; i < n_eval; ++i) {
    const double x = xs[static_cast<std::size_t>(i)];
    true_corr[static_cast<std::size_t>(i)] =
        kernel::covariance(params, x, reference_point) /
        (std::sqrt(kernel::variance(params, x)) * ref_sd);
  }

  std::vector<CurvePoint> out;
  out.reserve(k_values.size());
  for (int k : k_values) {
    int r = k;
    if (family == BasisFamily::SeasonalBSpline) {
      if (k % 3 != 0) {
        throw DomainError("correlation_error_curve: seasonal basis size must be 3r, got " +
                          std::to_string(k));
      }
      r = k / 3;
    }
    const BasisSet basis = build_basis(family, a, b, r, alpha);
    const WeightLaw law = assemble_T(basis, alpha);
    const Eigen::MatrixXd cov = approx_covariance(basis, law, 1.0, xs);
    const Eigen::Index ref = cov.rows() - 1;
    double max_err = 0.0;
    for (int i = 0; i < n_eval; ++i) {
      const double approx_corr =
          cov(i, ref) / std::sqrt(cov(i, i) * cov(ref, ref));
      max_err = std::max(max_err,
                         std::abs(approx_corr - true_corr[static_cast<std::size_t>(i)]));
    }
    out.push_back(CurvePoint{k, max_err});
  }
  return out;
}

}  // namespace sgp::fem
