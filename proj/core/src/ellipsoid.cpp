#include "lab/ellipsoid.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lab::ellipsoid {
namespace {

// Residuals r_i = x_i^T S x_i - 1.
Vector residuals(const Matrix& points, const Matrix& s) {
  const int n = static_cast<int>(points.rows());
  Vector r(n);
  for (int i = 0; i < n; ++i) {
    const auto x = points.row(i);
    r(i) = x * s * x.transpose() - 1.0;
  }
  return r;
}

// Gram matrix of the rank-one constraint matrices x_i x_i^T under the
// Frobenius inner product: G_ij = (x_i . x_j)^2.
Matrix constraint_gram(const Matrix& points) {
  const Matrix inner = points * points.transpose();
  return inner.array().square().matrix();
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kFeasible: return "feasible";
    case Verdict::kInfeasibleNumerical: return "infeasible-numerical";
    case Verdict::kUnknown: return "unknown";
  }
  return "unknown";
}

PointCloud gen_points(int d, int n, RngStream& rng) {
  if (d < 1 || n < 1) throw std::invalid_argument("gen_points: d, n must be >= 1");
  PointCloud cloud;
  cloud.d = d;
  cloud.n = n;
  cloud.points.resize(n, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) cloud.points(i, j) = scale * rng.normal();
  return cloud;
}

Matrix project_psd(const Matrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (s + s.transpose()));
  const Vector clipped = solver.eigenvalues().cwiseMax(0.0);
  return solver.eigenvectors() * clipped.asDiagonal() *
         solver.eigenvectors().transpose();
}

FitStatus fit_sdp(const PointCloud& cloud, const FitOptions& opts) {
  const int d = cloud.d;
  const std::int64_t full_rank =
      std::min<std::int64_t>(cloud.n, static_cast<std::int64_t>(d) * (d + 1) / 2);
  const Matrix gram = constraint_gram(cloud.points);
  Eigen::CompleteOrthogonalDecomposition<Matrix> gram_solver(gram);
  gram_solver.setThreshold(1e-10);
  // For n > d(d+1)/2 the Gram is singular by counting; only a rank drop
  // below that bound signals points in degenerate position.
  if (gram_solver.rank() < full_rank)
    throw std::runtime_error("fit_sdp: points in degenerate position (singular Gram)");

  // Least-squares correction toward {x_i^T S x_i = 1}; exact projection when
  // the system is consistent.
  auto project_affine = [&](const Matrix& s) {
    const Vector c = gram_solver.solve(-residuals(cloud.points, s));
    Matrix out = s;
    for (int i = 0; i < cloud.n; ++i)
      out += c(i) * cloud.points.row(i).transpose() * cloud.points.row(i);
    return out;
  };

  // Dykstra with a correction term on the cone projection only (the other
  // set is affine). Start at the near-fit S = I.
  Matrix s = Matrix::Identity(d, d);
  Matrix correction = Matrix::Zero(d, d);
  FitStatus status;

  // Stall detection compares the affine<->cone gap against its value a
  // window ago: slow linear convergence keeps shrinking by a visible factor,
  // a positive limiting gap (inconsistent sets) does not.
  constexpr int kWindow = 500;
  std::vector<double> gap_history;
  gap_history.reserve(opts.max_iter);

  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    const Matrix affine = project_affine(s);
    const Matrix psd = project_psd(affine + correction);
    correction = affine + correction - psd;
    s = 0.5 * (psd + psd.transpose());
    status.iterations = iter;

    const Vector r = residuals(cloud.points, s);
    const double max_res = r.lpNorm<Eigen::Infinity>();
    if (max_res <= opts.tol_eq) {
      const double min_eig = eigsym_dense(s).min();
      if (min_eig >= -opts.tol_psd) {
        status.verdict = Verdict::kFeasible;
        status.s = s;
        status.max_residual = max_res;
        status.min_eig = min_eig;
        return status;
      }
    }

    const double gap = (affine - psd).norm();
    gap_history.push_back(gap);
    if (iter > kWindow && gap > 10.0 * opts.tol_eq &&
        gap > 0.9 * gap_history[iter - 1 - kWindow]) {
      status.verdict = Verdict::kInfeasibleNumerical;
      status.s = s;
      status.max_residual = max_res;
      status.min_eig = eigsym_dense(s).min();
      return status;
    }
  }
  status.verdict = Verdict::kUnknown;
  status.s = s;
  status.max_residual = residuals(cloud.points, s).lpNorm<Eigen::Infinity>();
  status.min_eig = eigsym_dense(s).min();
  return status;
}

LeastNormResult least_norm_candidate(const PointCloud& cloud) {
  const Matrix gram = constraint_gram(cloud.points);
  Eigen::LDLT<Matrix> solver(gram);
  const Vector ones = Vector::Ones(cloud.n);
  const Vector c = solver.solve(ones);
  if ((gram * c - ones).lpNorm<Eigen::Infinity>() > 1e-8)
    throw std::runtime_error("least_norm_candidate: singular Gram system");
  Matrix s = Matrix::Zero(cloud.d, cloud.d);
  for (int i = 0; i < cloud.n; ++i)
    s += c(i) * cloud.points.row(i).transpose() * cloud.points.row(i);
  LeastNormResult result;
  result.s_star = s;
  result.min_eig = eigsym_dense(0.5 * (s + s.transpose())).min();
  result.max_residual = residuals(cloud.points, s).lpNorm<Eigen::Infinity>();
  return result;
}

bool efp_check(const PointCloud& cloud, const Matrix& s, const EfpParams& params) {
  if (s.rows() != cloud.d || s.cols() != cloud.d)
    throw std::invalid_argument("efp_check: dimension mismatch");
  if (!(params.epsilon > 0.0) || !(params.m > 0.0) ||
      !std::isfinite(params.epsilon) || !std::isfinite(params.m))
    throw std::invalid_argument("efp_check: epsilon and M must be positive");
  const Spectrum spec = eigsym_dense(0.5 * (s + s.transpose()));
  // Sp(S) in [0, M], up to roundoff on the lower edge.
  if (spec.min() < -1e-12 * std::max(1.0, spec.max())) return false;
  if (spec.max() > params.m) return false;
  const double mean_abs = residuals(cloud.points, s).cwiseAbs().mean();
  return mean_abs <= params.epsilon / std::sqrt(static_cast<double>(cloud.d));
}

std::vector<TransitionRow> transition_scan(int d,
                                           const std::vector<double>& alpha_grid,
                                           int trials, RngStream& rng,
                                           const FitOptions& opts) {
  if (trials < 1) throw std::invalid_argument("transition_scan: trials must be >= 1");
  std::vector<TransitionRow> table;
  for (std::size_t a = 0; a < alpha_grid.size(); ++a) {
    TransitionRow row;
    row.alpha = alpha_grid[a];
    row.n = std::max(1, static_cast<int>(std::llround(alpha_grid[a] * d * d)));
    int feasible = 0;
    double iter_sum = 0.0;
    for (int t = 0; t < trials; ++t) {
      RngStream trial_rng =
          rng.substream(a * 1000003ULL + static_cast<std::uint64_t>(t));
      const PointCloud cloud = gen_points(d, row.n, trial_rng);
      const FitStatus status = fit_sdp(cloud, opts);
      if (status.verdict == Verdict::kFeasible) ++feasible;
      iter_sum += status.iterations;
    }
    row.feasible_rate = static_cast<double>(feasible) / trials;
    row.mean_iterations = iter_sum / trials;
    table.push_back(row);
  }
  return table;
}

}  // namespace lab::ellipsoid
