#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <memory>
#include <vector>

#include "sgp/bspline.hpp"
#include "sgp/params.hpp"

namespace sgp::fem {

enum class BasisFamily { CubicBSpline, SeasonalBSpline };

/// Equally spaced cubic-spline knots over [a, b] with clamped boundaries;
/// r is the number of underlying plain splines.
struct KnotGrid {
  double a;
  double b;
  int r;
};

/// Basis for the finite-element approximation. CubicBSpline holds the r
/// plain splines; SeasonalBSpline augments them with the same splines
/// damped by cos(alpha x) and sin(alpha x), ordered
/// [plain block | cos block | sin block], 3r functions in total.
///
/// When the domain starts at 0, the functions whose value or first
/// derivative is nonzero at 0 are dropped so that the approximation obeys
/// the zero initial conditions of the process; size() reports the retained
/// count and nominal_size() the unconstrained count (r or 3r).
class BasisSet {
 public:
  BasisSet(BasisFamily family, const KnotGrid& grid, double alpha);

  BasisFamily family() const { return family_; }
  const KnotGrid& grid() const { return grid_; }
  double alpha() const { return alpha_; }
  const bspline::CubicBasis& engine() const { return engine_; }

  int nominal_size() const;
  int size() const { return static_cast<int>(active_.size()); }
  const std::vector<int>& active() const { return active_; }

  /// Nonzero basis functions at x: at most 4 (cubic) or 12 (seasonal)
  /// retained columns with values and second derivatives.
  struct LocalEval {
    int count = 0;
    int col[12];      // retained column index
    double value[12];
    double d2[12];
  };
  LocalEval eval(double x) const;

  /// Dense single-function evaluation by retained column (tests/oracles).
  double value_at(int col, double x) const;
  double second_derivative_at(int col, double x) const;

 private:
  friend LocalEval family_eval_raw(const BasisSet&, double, bool);

  BasisFamily family_;
  KnotGrid grid_;
  double alpha_;
  bspline::CubicBasis engine_;
  std::vector<int> active_;       // retained -> raw index
  std::vector<int> raw_to_col_;   // raw -> retained index or -1
};

BasisSet build_basis(BasisFamily family, double a, double b, int r, double alpha = 0.0);

/// Precision of the basis weights at sigma = 1, with its sparse Cholesky
/// factorisation; w ~ N(0, sigma^2 T^{-1}).
struct WeightLaw {
  Eigen::SparseMatrix<double> T;
  std::shared_ptr<Eigen::SimplicialLLT<Eigen::SparseMatrix<double>>> chol;
  double log_det = 0.0;

  Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const { return chol->solve(rhs); }
};

struct GcmMatrices {
  Eigen::SparseMatrix<double> G;  // <phi_i, phi_j>
  Eigen::SparseMatrix<double> C;  // <phi_i'', phi_j''>
  Eigen::SparseMatrix<double> M;  // <phi_i, phi_j''> + <phi_i'', phi_j>
};

/// Assemble the Gram matrices by fixed 12-node Gauss-Legendre quadrature
/// per inter-knot span. Entries vanish whenever supports are disjoint.
GcmMatrices assemble_gcm(const BasisSet& basis);

/// T = alpha^4 G + C + alpha^2 M, factorised. Throws ConditioningError with
/// the indefinite pivot index if the (damped) basis is numerically
/// dependent; a larger r resolves that.
WeightLaw assemble_T(const BasisSet& basis, double alpha);

/// n x k design matrix Phi_ij = phi_j(x_i); at most 4 (cubic) or 12
/// (seasonal) nonzeros per row. All xs must lie inside the domain.
Eigen::SparseMatrix<double> design_matrix(const BasisSet& basis,
                                          const std::vector<double>& xs);

/// Covariance sigma^2 Phi T^{-1} Phi^T of the approximation at xs.
Eigen::MatrixXd approx_covariance(const BasisSet& basis, const WeightLaw& law,
                                  double sigma, const std::vector<double>& xs);

struct CurvePoint {
  int k;             // nominal basis count (r or 3r)
  double max_error;  // max |rho_ref(x) - approx rho_ref(x)| over the grid
};

/// Maximum correlation approximation error against the exact process, for
/// each nominal basis count. The evaluation grid is n_eval equally spaced
/// points on [eval_lo, eval_hi]; reference_point must be interior.
std::vector<CurvePoint> correlation_error_curve(BasisFamily family, double alpha,
                                                double a, double b,
                                                const std::vector<int>& k_values,
                                                double reference_point,
                                                double eval_lo, double eval_hi,
                                                int n_eval = 401);

}  // namespace sgp::fem
