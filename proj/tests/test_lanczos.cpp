#include <cmath>

#include "doctest.h"
#include "lab/lanczos.hpp"

using namespace lab;

TEST_CASE("diagonal operator diag(1..100)") {
  const int n = 100;
  const LinearOperator apply = [n](const Vector& v) {
    Vector out(n);
    for (int i = 0; i < n; ++i) out(i) = (i + 1) * v(i);
    return out;
  };
  RngStream rng(3, 0);
  const LanczosExtremes ext = lambda_extremes_lanczos(apply, n, 200, 1e-10, rng);
  REQUIRE(ext.converged);
  CHECK(ext.lambda_max == doctest::Approx(100.0).epsilon(1e-8));
  CHECK(ext.lambda_min == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("zero operator returns (0, 0)") {
  const LinearOperator apply = [](const Vector& v) {
    return Vector(Vector::Zero(v.size()));
  };
  RngStream rng(4, 0);
  const LanczosExtremes ext = lambda_extremes_lanczos(apply, 25, 100, 1e-10, rng);
  REQUIRE(ext.converged);
  CHECK(ext.lambda_max == 0.0);
  CHECK(ext.lambda_min == 0.0);
}

TEST_CASE("agrees with the dense solver on random symmetric matrices") {
  for (int seed = 0; seed < 10; ++seed) {
    RngStream rng(100 + seed, 0);
    const Matrix w = sample_goe(50, rng);
    const Spectrum dense = eigsym_dense(w);
    const LinearOperator apply = [&w](const Vector& v) { return Vector(w * v); };
    RngStream lrng(100 + seed, 1);
    const LanczosExtremes ext = lambda_extremes_lanczos(apply, 50, 100, 1e-10, lrng);
    REQUIRE(ext.converged);
    CHECK(ext.lambda_max == doctest::Approx(dense.max()).epsilon(1e-8));
    CHECK(ext.lambda_min == doctest::Approx(dense.min()).epsilon(1e-8));
  }
}

TEST_CASE("asymmetric operator is rejected") {
  Matrix m(4, 4);
  m.setZero();
  m(0, 1) = 1.0;  // no transpose partner
  const LinearOperator apply = [&m](const Vector& v) { return Vector(m * v); };
  RngStream rng(5, 0);
  CHECK_THROWS(lambda_extremes_lanczos(apply, 4, 50, 1e-10, rng));
}

TEST_CASE("repeated eigenvalue with invariant-subspace restart") {
  // diag(5, 5, 5, 1): the Krylov space from a single start vector finds
  // lambda_max = 5 and lambda_min = 1 only after restarts deflate.
  const LinearOperator apply = [](const Vector& v) {
    Vector out = v;
    out(0) *= 5;
    out(1) *= 5;
    out(2) *= 5;
    return out;
  };
  RngStream rng(6, 0);
  const LanczosExtremes ext = lambda_extremes_lanczos(apply, 4, 50, 1e-12, rng);
  REQUIRE(ext.converged);
  CHECK(ext.lambda_max == doctest::Approx(5.0).epsilon(1e-10));
  CHECK(ext.lambda_min == doctest::Approx(1.0).epsilon(1e-10));
}
