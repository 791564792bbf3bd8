#include "lab/lanczos.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lab {
namespace {

Vector random_unit(int dim, RngStream& rng) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.normal();
  const double norm = v.norm();
  if (norm == 0.0) {
    v.setZero();
    v(0) = 1.0;
    return v;
  }
  return v / norm;
}

void check_symmetry(const LinearOperator& apply, int dim, double tol,
                    RngStream& rng) {
  const Vector u = random_unit(dim, rng);
  const Vector v = random_unit(dim, rng);
  const Vector au = apply(u);
  const Vector av = apply(v);
  const double scale = std::max(1.0, std::max(au.norm(), av.norm()));
  if (std::abs(u.dot(av) - au.dot(v)) > std::max(tol, 1e-10) * scale)
    throw std::invalid_argument("lambda_extremes_lanczos: operator is not symmetric");
}

}  // namespace

LanczosExtremes lambda_extremes_lanczos(const LinearOperator& apply, int dim,
                                        int max_iters, double tol,
                                        RngStream& rng) {
  if (dim < 1) throw std::invalid_argument("lambda_extremes_lanczos: dim must be >= 1");
  check_symmetry(apply, dim, tol, rng);

  const int max_steps = std::min(max_iters, dim);
  std::vector<Vector> basis;
  basis.reserve(max_steps);
  std::vector<double> alpha, beta;  // beta[j] couples step j to j+1

  basis.push_back(random_unit(dim, rng));
  LanczosExtremes result;
  Eigen::SelfAdjointEigenSolver<Matrix> tri_solver;

  for (int j = 0; j < max_steps; ++j) {
    Vector w = apply(basis[j]);
    const double a = basis[j].dot(w);
    alpha.push_back(a);
    w -= a * basis[j];
    if (j > 0) w -= beta[j - 1] * basis[j - 1];
    // Full reorthogonalization, two passes.
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& q : basis) w -= q.dot(w) * q;
    const double b = w.norm();

    // Ritz values and residual bounds from the tridiagonal.
    const int k = j + 1;
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), k);
    Eigen::VectorXd sub(k > 1 ? k - 1 : 1);
    for (int i = 0; i + 1 < k; ++i) sub(i) = beta[i];
    tri_solver.computeFromTridiagonal(diag, sub.head(std::max(k - 1, 0)),
                                      Eigen::ComputeEigenvectors);
    const Eigen::VectorXd& ritz = tri_solver.eigenvalues();
    result.lambda_min = ritz(0);
    result.lambda_max = ritz(k - 1);
    result.iterations = k;
    const double norm_est = std::max(std::abs(ritz(0)), std::abs(ritz(k - 1)));
    const double res_lo = b * std::abs(tri_solver.eigenvectors()(k - 1, 0));
    const double res_hi = b * std::abs(tri_solver.eigenvectors()(k - 1, k - 1));
    const double threshold = tol * std::max(norm_est, 1e-300);
    if ((res_lo <= threshold && res_hi <= threshold) || k == dim) {
      result.converged = true;
      return result;
    }
    if (b <= 1e-14 * std::max(norm_est, 1.0)) {
      // Invariant subspace hit; restart with a fresh orthogonal direction.
      Vector fresh = random_unit(dim, rng);
      for (int pass = 0; pass < 2; ++pass)
        for (const Vector& q : basis) fresh -= q.dot(fresh) * q;
      const double fn = fresh.norm();
      if (fn <= 1e-12) {  // basis spans the whole space
        result.converged = true;
        return result;
      }
      basis.push_back(fresh / fn);
      beta.push_back(0.0);
    } else {
      basis.push_back(w / b);
      beta.push_back(b);
    }
  }
  result.converged = false;
  return result;
}

}  // namespace lab
