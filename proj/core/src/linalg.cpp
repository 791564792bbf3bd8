#include "lab/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace lab {

bool is_symmetric(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = i + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j) - m(j, i)) > tol) return false;
  return true;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (std::abs(m(i, i).imag()) > tol) return false;
    for (Eigen::Index j = i + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  }
  return true;
}

Spectrum eigsym_dense(const Matrix& m, bool want_vectors) {
  if (!m.allFinite()) throw std::invalid_argument("eigsym_dense: non-finite entries");
  if (!is_symmetric(m)) throw std::invalid_argument("eigsym_dense: matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(
      m, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigsym_dense: eigensolver failed");
  Spectrum s;
  s.eigenvalues = solver.eigenvalues();
  if (want_vectors) s.eigenvectors = solver.eigenvectors();
  return s;
}

Spectrum eigsym_dense(const ComplexMatrix& m, bool want_vectors) {
  if (!m.allFinite()) throw std::invalid_argument("eigsym_dense: non-finite entries");
  if (!is_hermitian(m)) throw std::invalid_argument("eigsym_dense: matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      m, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigsym_dense: eigensolver failed");
  Spectrum s;
  s.eigenvalues = solver.eigenvalues();
  if (want_vectors) s.eigenvectors_c = solver.eigenvectors();
  return s;
}

Matrix sample_goe(int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_goe: n must be >= 1");
  Matrix w(n, n);
  const double off_scale = 1.0 / std::sqrt(static_cast<double>(n));
  const double diag_scale = std::sqrt(2.0 / static_cast<double>(n));
  for (int i = 0; i < n; ++i) {
    w(i, i) = diag_scale * rng.normal();
    for (int j = i + 1; j < n; ++j) {
      const double g = off_scale * rng.normal();
      w(i, j) = g;
      w(j, i) = g;
    }
  }
  return w;
}

ComplexMatrix sample_gue_unit(int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_gue_unit: n must be >= 1");
  ComplexMatrix w(n, n);
  for (int i = 0; i < n; ++i) {
    w(i, i) = rng.normal();
    for (int j = i + 1; j < n; ++j) {
      const std::complex<double> z = rng.normal_complex();
      w(i, j) = z;
      w(j, i) = std::conj(z);
    }
  }
  return w;
}

}  // namespace lab
