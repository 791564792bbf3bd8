#pragma once

#include <Eigen/Dense>
#include <optional>

#include "lab/rng.hpp"

namespace lab {

using Matrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

/// Full spectrum of a symmetric/Hermitian matrix, ascending.
struct Spectrum {
  Vector eigenvalues;
  std::optional<Matrix> eigenvectors;          // real symmetric input
  std::optional<ComplexMatrix> eigenvectors_c; // Hermitian input

  double min() const { return eigenvalues(0); }
  double max() const { return eigenvalues(eigenvalues.size() - 1); }
  double width() const { return max() - min(); }
  double spectral_norm() const { return std::max(std::abs(min()), std::abs(max())); }
};

/// Dense symmetric eigendecomposition. Throws std::invalid_argument on
/// non-finite or non-symmetric input.
Spectrum eigsym_dense(const Matrix& m, bool want_vectors = false);
Spectrum eigsym_dense(const ComplexMatrix& m, bool want_vectors = false);

/// Expression-friendly dispatch (evaluates the expression, then picks the
/// real or Hermitian path by scalar type).
template <typename Derived>
Spectrum eigsym_dense(const Eigen::MatrixBase<Derived>& m,
                      bool want_vectors = false) {
  if constexpr (Eigen::NumTraits<typename Derived::Scalar>::IsComplex) {
    return eigsym_dense(ComplexMatrix(m), want_vectors);
  } else {
    return eigsym_dense(Matrix(m), want_vectors);
  }
}

/// GOE draw: symmetric, off-diagonal variance 1/n, diagonal variance 2/n,
/// so the bulk spectrum converges to [-2, 2].
Matrix sample_goe(int n, RngStream& rng);

/// Hermitian Wigner draw with E|W_ij|^2 = 1 off-diagonal and real N(0,1)
/// diagonal. Callers scale by 1/sqrt(n) to put the bulk edge at 2.
ComplexMatrix sample_gue_unit(int n, RngStream& rng);

bool is_symmetric(const Matrix& m, double tol = 0.0);
bool is_hermitian(const ComplexMatrix& m, double tol = 0.0);

}  // namespace lab
