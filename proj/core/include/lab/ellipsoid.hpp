#pragma once

#include <string>
#include <vector>

#include "lab/linalg.hpp"
#include "lab/rng.hpp"

namespace lab::ellipsoid {

/// n Gaussian points in R^d with covariance I/d (so E ||x||^2 = 1).
struct PointCloud {
  int d = 0;
  int n = 0;
  Matrix points;  // n x d, one point per row
};

PointCloud gen_points(int d, int n, RngStream& rng);

enum class Verdict { kFeasible, kInfeasibleNumerical, kUnknown };

std::string to_string(Verdict v);

struct FitStatus {
  Verdict verdict = Verdict::kUnknown;
  Matrix s;                 // candidate quadratic form, when available
  double max_residual = 0.0;
  double min_eig = 0.0;
  int iterations = 0;
};

struct FitOptions {
  double tol_eq = 1e-7;
  double tol_psd = 1e-9;
  int max_iter = 100000;
};

/// Searches for S >= 0 with x_i^T S x_i = 1 for all i by Dykstra-corrected
/// alternating projections between the affine constraint set and the PSD
/// cone, starting from S = I. "Infeasible" is only ever numerical: a gap
/// between the two sets that stays above 10*tol_eq and shrinks by less than
/// 10% per 500 iterations cannot certify infeasibility. Throws on a
/// numerically singular constraint Gram matrix.
FitStatus fit_sdp(const PointCloud& cloud, const FitOptions& opts = {});

struct LeastNormResult {
  Matrix s_star;
  double min_eig = 0.0;
  double max_residual = 0.0;
};

/// Minimum-Frobenius-norm solution of {x_i^T S x_i = 1}: S = sum c_i x_i
/// x_i^T with c solving the constraint Gram system. min_eig >= 0 certifies
/// an ellipsoid fit exists.
LeastNormResult least_norm_candidate(const PointCloud& cloud);

struct EfpParams {
  double epsilon = 0.0;
  double m = 0.0;
};

/// Relaxed fit check: Sp(S) within [0, M] and mean absolute residual at
/// most epsilon/sqrt(d).
bool efp_check(const PointCloud& cloud, const Matrix& s, const EfpParams& params);

struct TransitionRow {
  double alpha = 0.0;
  int n = 0;
  double feasible_rate = 0.0;
  double mean_iterations = 0.0;
};

std::vector<TransitionRow> transition_scan(int d,
                                           const std::vector<double>& alpha_grid,
                                           int trials, RngStream& rng,
                                           const FitOptions& opts = {});

/// Euclidean projection onto the PSD cone (eigenvalue clipping).
Matrix project_psd(const Matrix& s);

}  // namespace lab::ellipsoid
