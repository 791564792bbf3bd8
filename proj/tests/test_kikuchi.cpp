#include <cmath>

#include "doctest.h"
#include "lab/kikuchi.hpp"
#include "lab/subsets.hpp"

using namespace lab;
using namespace lab::kikuchi;

TEST_CASE("tensor entries combine signal and frozen noise") {
  RngStream rng(101, 0);
  const std::vector<int> x = {1, -1, 1, -1, 1, 1};
  SpikedTensor t = gen_spiked_tensor(6, 2, 3.0, x, rng);
  REQUIRE(t.subset_count() == binomial(6, 2));
  std::vector<int> subset = {0, 1};
  std::uint64_t rank = 0;
  do {
    const double sig = x[subset[0]] * x[subset[1]];
    CHECK(t.entries[rank] == doctest::Approx(3.0 * sig + t.noise[rank]));
    ++rank;
  } while (next_subset_colex(subset, 6));
}

TEST_CASE("set_lambda rebuilds entries against frozen noise") {
  RngStream rng(103, 0);
  SpikedTensor t = gen_spiked_tensor(8, 4, 1.0, rng);
  const std::vector<double> noise_before = t.noise;
  t.set_lambda(2.5);
  CHECK(t.noise == noise_before);
  CHECK(t.lambda == 2.5);

  // Difference between two lambda settings is exactly (dl) * signal product.
  SpikedTensor t2 = t;
  t2.set_lambda(4.5);
  for (std::uint64_t k = 0; k < t.subset_count(); ++k) {
    const double diff = t2.entries[k] - t.entries[k];
    CHECK(std::abs(std::abs(diff) - 2.0) <= 1e-12);
  }
}

TEST_CASE("two instances with equal seed share noise across lambda") {
  RngStream rng1(105, 0);
  RngStream rng2(105, 0);
  const SpikedTensor a = gen_spiked_tensor(7, 2, 0.0, rng1);
  const SpikedTensor b = gen_spiked_tensor(7, 2, 5.0, rng2);
  CHECK(a.noise == b.noise);
  CHECK(a.signal == b.signal);
}

TEST_CASE("generator validates its arguments") {
  RngStream rng(107, 0);
  CHECK_THROWS(gen_spiked_tensor(6, 3, 1.0, rng));   // odd r
  CHECK_THROWS(gen_spiked_tensor(6, 0, 1.0, rng));   // r < 2
  CHECK_THROWS(gen_spiked_tensor(3, 4, 1.0, rng));   // r > n
  CHECK_THROWS(gen_spiked_tensor(6, 2, -1.0, rng));  // negative lambda
  CHECK_THROWS(gen_spiked_tensor(6, 2, 1.0, {1, 0, 1, 1, 1, 1}, rng));
  CHECK_THROWS(KikuchiOperator(gen_spiked_tensor(6, 4, 1.0, rng), 1));  // ell < r/2
}

TEST_CASE("matvec matches dense assembly across shapes") {
  struct Shape {
    int n, r, ell;
  };
  // All with C(n, ell) <= 512.
  const Shape shapes[] = {{8, 2, 1}, {8, 2, 2}, {8, 4, 2}, {10, 2, 3},
                          {12, 4, 3}, {9, 6, 3}, {16, 2, 2}};
  for (const Shape& sh : shapes) {
    RngStream rng(200 + sh.n + sh.r + sh.ell, 0);
    const SpikedTensor t = gen_spiked_tensor(sh.n, sh.r, 1.3, rng);
    const KikuchiOperator op(t, sh.ell);
    REQUIRE(op.dim == binomial(sh.n, sh.ell));
    const Matrix dense = assemble_dense(op);
    CHECK((dense - dense.transpose()).lpNorm<Eigen::Infinity>() == 0.0);
    for (int rep = 0; rep < 3; ++rep) {
      Vector v(op.dim);
      for (std::uint64_t i = 0; i < op.dim; ++i) v(i) = rng.normal();
      const Vector fast = kikuchi_matvec(op, v);
      const Vector slow = dense * v;
      CHECK((fast - slow).lpNorm<Eigen::Infinity>() <= 1e-10);
    }
  }
}

TEST_CASE("row degrees equal C(ell, r/2) * C(n - ell, r/2)") {
  const int n = 10, r = 4, ell = 3;
  RngStream rng(109, 0);
  SpikedTensor t = gen_spiked_tensor(n, r, 0.0, rng);
  // Make every entry nonzero so the support count is exact.
  for (double& e : t.entries) e = 1.0;
  const KikuchiOperator op(t, ell);
  const Matrix dense = assemble_dense(op);
  const double expected =
      static_cast<double>(binomial(ell, r / 2) * binomial(n - ell, r / 2));
  for (std::uint64_t i = 0; i < op.dim; ++i) {
    int deg = 0;
    for (std::uint64_t j = 0; j < op.dim; ++j)
      if (dense(i, j) != 0.0) ++deg;
    CHECK(static_cast<double>(deg) == expected);
  }
}

TEST_CASE("lambda difference acts as lambda times the signal operator") {
  RngStream rng1(111, 0);
  RngStream rng2(111, 0);
  const int n = 9, r = 2, ell = 2;
  const SpikedTensor t0 = gen_spiked_tensor(n, r, 0.0, rng1);
  const SpikedTensor t5 = gen_spiked_tensor(n, r, 5.0, rng2);
  const Matrix d0 = assemble_dense(KikuchiOperator(t0, ell));
  const Matrix d5 = assemble_dense(KikuchiOperator(t5, ell));
  const Matrix b = (d5 - d0) / 5.0;
  // B has entries in {-1, 0, 1} given by the signal alone.
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      const double v = std::abs(b(i, j));
      CHECK((v <= 1e-12 || std::abs(v - 1.0) <= 1e-12));
    }
}

TEST_CASE("lambda_max agrees with the dense spectrum") {
  RngStream rng(113, 0);
  const SpikedTensor t = gen_spiked_tensor(10, 2, 2.0, rng);
  const KikuchiOperator op(t, 2);
  const Matrix dense = assemble_dense(op);
  RngStream lrng(113, 1);
  const double lmax = lambda_max_kikuchi(op, 1e-10, lrng);
  CHECK(lmax == doctest::Approx(eigsym_dense(dense).max()).epsilon(1e-8));
}

TEST_CASE("threshold scan flags a clear spike and respects the grid") {
  RngStream rng(115, 0);
  const std::vector<double> grid = {0.0, 0.5, 4.0};
  const ThresholdScan scan = threshold_scan(12, 2, 1, grid, 6, 0.1, rng);
  REQUIRE(scan.rows.size() == 3);
  CHECK(!scan.rows[0].pop_flag);  // lambda = 0 is the baseline
  CHECK(scan.rows[2].pop_flag);   // lambda = 4 dwarfs the n=12 noise edge
  REQUIRE(scan.found);
  // lambda*n at 0.5 is 6, below the n=12 noise edge ~2*sqrt(12): only the
  // last grid point pops, so the spacing reported is 4.0 - 0.5.
  CHECK(scan.lambda_natural == 4.0);
  CHECK(scan.grid_spacing == doctest::Approx(3.5));
  CHECK(scan.scaled_threshold ==
        doctest::Approx(std::sqrt(12.0) * scan.lambda_natural));
}

TEST_CASE("threshold scan validates the grid") {
  RngStream rng(117, 0);
  CHECK_THROWS(threshold_scan(8, 2, 1, {0.5, 1.0}, 2, 0.1, rng));  // missing 0
  CHECK_THROWS(threshold_scan(8, 2, 1, {0.0, 2.0, 1.0}, 2, 0.1, rng));
}
