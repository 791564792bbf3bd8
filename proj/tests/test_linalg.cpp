#include <cmath>

#include "doctest.h"
#include "lab/discrepancy.hpp"
#include "lab/lanczos.hpp"
#include "lab/linalg.hpp"

using namespace lab;

TEST_CASE("identity spectrum") {
  const Spectrum s = eigsym_dense(Matrix::Identity(3, 3));
  for (int i = 0; i < 3; ++i) CHECK(s.eigenvalues(i) == doctest::Approx(1.0));
}

TEST_CASE("swap matrix has eigenvalues -1, 1") {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  const Spectrum s = eigsym_dense(m);
  CHECK(s.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(s.eigenvalues(1) == doctest::Approx(1.0));
}

TEST_CASE("scaled Sylvester H_2/2 has eigenvalues in {-1, 1}") {
  const disc::IntMatrix h = disc::sylvester_hadamard(2);
  const Matrix m = h.cast<double>() / 2.0;
  const Spectrum s = eigsym_dense(m);
  for (int i = 0; i < 4; ++i)
    CHECK(std::abs(s.eigenvalues(i)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eigenvector reconstruction residual") {
  RngStream rng(11, 0);
  const Matrix w = sample_goe(40, rng);
  const Spectrum s = eigsym_dense(w, true);
  const Matrix recon = *s.eigenvectors * s.eigenvalues.asDiagonal() *
                       s.eigenvectors->transpose();
  CHECK((w - recon).norm() <= 1e-10 * w.norm());
}

TEST_CASE("non-finite input rejected") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::nan("");
  CHECK_THROWS(eigsym_dense(m));
}

TEST_CASE("goe: n=1 entry has variance 2") {
  RngStream rng(5, 0);
  double sum_sq = 0.0;
  const int samples = 100000;
  for (int i = 0; i < samples; ++i) {
    const Matrix w = sample_goe(1, rng);
    sum_sq += w(0, 0) * w(0, 0);
  }
  CHECK(sum_sq / samples == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("goe: bulk edge near 2 at n=1000") {
  RngStream rng(17, 0);
  const Matrix w = sample_goe(1000, rng);
  const LinearOperator apply = [&w](const Vector& v) { return Vector(w * v); };
  RngStream lrng(17, 1);
  const LanczosExtremes ext = lambda_extremes_lanczos(apply, 1000, 300, 1e-8, lrng);
  REQUIRE(ext.converged);
  CHECK(ext.lambda_max > 1.8);
  CHECK(ext.lambda_max < 2.2);
  CHECK(ext.lambda_max - ext.lambda_min > 3.6);
  CHECK(ext.lambda_max - ext.lambda_min < 4.4);
}

TEST_CASE("goe width over seeds at n=1000") {
  double width_sum = 0.0;
  const int seeds = 20;
  for (int s = 0; s < seeds; ++s) {
    RngStream rng(1000 + s, 0);
    const Matrix w = sample_goe(1000, rng);
    const LinearOperator apply = [&w](const Vector& v) { return Vector(w * v); };
    RngStream lrng(1000 + s, 1);
    const LanczosExtremes ext =
        lambda_extremes_lanczos(apply, 1000, 300, 1e-8, lrng);
    REQUIRE(ext.converged);
    width_sum += ext.lambda_max - ext.lambda_min;
  }
  const double mean_width = width_sum / seeds;
  CHECK(mean_width > 3.8);
  CHECK(mean_width < 4.2);
}

TEST_CASE("gue draw is exactly Hermitian with unit off-diagonal power") {
  RngStream rng(23, 0);
  const ComplexMatrix w = sample_gue_unit(500, rng);
  CHECK(is_hermitian(w));
  double sum = 0.0;
  int count = 0;
  for (int i = 0; i < 500; ++i)
    for (int j = 0; j < 500; ++j)
      if (i != j) {
        sum += std::norm(w(i, j));
        ++count;
      }
  CHECK(sum / count == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("gue: bulk edge of W/sqrt(n) near 2") {
  RngStream rng(29, 0);
  const int n = 1000;
  const ComplexMatrix w = sample_gue_unit(n, rng);
  const ComplexMatrix y = w / std::sqrt(static_cast<double>(n));
  const Spectrum s = eigsym_dense(y);
  CHECK(s.max() > 1.8);
  CHECK(s.max() < 2.2);
}

TEST_CASE("sample_goe rejects n=0") {
  RngStream rng(1, 0);
  CHECK_THROWS(sample_goe(0, rng));
}
