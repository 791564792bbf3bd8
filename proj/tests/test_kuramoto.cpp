#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lab/kuramoto.hpp"

using namespace lab;
using namespace lab::kuramoto;

namespace {

Graph cycle_graph(int n) {
  Matrix w = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    w(i, (i + 1) % n) = 1.0;
    w((i + 1) % n, i) = 1.0;
  }
  return Graph(w);
}

Graph complete_graph(int n) {
  Matrix w = Matrix::Ones(n, n);
  w.diagonal().setZero();
  return Graph(w);
}

PhaseState twisted_state(int n, int q) {
  Vector theta(n);
  for (int i = 0; i < n; ++i)
    theta(i) = 2.0 * std::numbers::pi * q * i / n;
  return PhaseState(theta);
}

PhaseState random_state(int n, RngStream& rng) {
  Vector theta(n);
  for (int i = 0; i < n; ++i) theta(i) = 2.0 * std::numbers::pi * rng.uniform();
  return PhaseState(theta);
}

Graph random_graph(int n, RngStream& rng) {
  Matrix w = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) w(i, j) = w(j, i) = rng.normal();
  return Graph(w);
}

}  // namespace

TEST_CASE("synchronized state has zero energy and zero gradient") {
  const Graph g = complete_graph(6);
  const PhaseState s(Vector(Vector::Constant(6, 1.234)));
  CHECK(energy(g, s) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(grad(g, s).lpNorm<Eigen::Infinity>() <= 1e-14);
  CHECK(is_synchronized(s));
  const CriticalityReport rep = certify_critical(g, s);
  CHECK(rep.classification == Criticality::kSynchronizedGlobal);
}

TEST_CASE("gradient matches central finite differences on 100 random cases") {
  const double h = 1e-6;
  for (int seed = 0; seed < 100; ++seed) {
    RngStream rng(700 + seed, 0);
    const int n = 3 + static_cast<int>(rng.uniform_below(6));
    const Graph g = random_graph(n, rng);
    const PhaseState s = random_state(n, rng);
    const Vector an = grad(g, s);
    for (int i = 0; i < n; ++i) {
      Vector tp = s.theta, tm = s.theta;
      tp(i) += h;
      tm(i) -= h;
      const double fd =
          (energy(g, PhaseState(tp)) - energy(g, PhaseState(tm))) / (2 * h);
      CHECK(an(i) == doctest::Approx(fd).epsilon(1e-4));
    }
  }
}

TEST_CASE("hessian matches finite differences of the gradient") {
  RngStream rng(31, 0);
  const Graph g = random_graph(5, rng);
  const PhaseState s = random_state(5, rng);
  const Matrix hess = hessian(g, s);
  CHECK((hess - hess.transpose()).lpNorm<Eigen::Infinity>() <= 1e-14);
  const double h = 1e-6;
  for (int j = 0; j < 5; ++j) {
    Vector tp = s.theta, tm = s.theta;
    tp(j) += h;
    tm(j) -= h;
    const Vector fd = (grad(g, PhaseState(tp)) - grad(g, PhaseState(tm))) / (2 * h);
    for (int i = 0; i < 5; ++i)
      CHECK(hess(i, j) == doctest::Approx(fd(i)).epsilon(1e-4));
  }
}

TEST_CASE("hessian rows sum to zero (rotation zero mode)") {
  for (int seed = 0; seed < 10; ++seed) {
    RngStream rng(800 + seed, 0);
    const Graph g = random_graph(7, rng);
    const PhaseState s = random_state(7, rng);
    const Matrix hess = hessian(g, s);
    const Vector rowsums = hess.rowwise().sum();
    CHECK(rowsums.lpNorm<Eigen::Infinity>() <= 1e-10);
  }
}

TEST_CASE("energy and gradient norm are rotation invariant") {
  RngStream rng(37, 0);
  const Graph g = random_graph(6, rng);
  const PhaseState s = random_state(6, rng);
  const double shift = 0.918273;
  const PhaseState s2(Vector(s.theta.array() + shift));
  CHECK(std::abs(energy(g, s) - energy(g, s2)) <= 1e-12);
  CHECK((grad(g, s) - grad(g, s2)).lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("descent never increases energy and converges on K_5") {
  const Graph g = complete_graph(5);
  RngStream rng(41, 0);
  const PhaseState start = random_state(5, rng);
  const double e0 = energy(g, start);
  DescentOptions opts;
  opts.tol_grad = 1e-7;  // energy decrease bottoms out near machine scale
  const DescentResult res = descend(g, start, opts);
  CHECK(res.converged);
  CHECK(res.final_energy <= e0 + 1e-12);
  CHECK(grad(g, res.state).lpNorm<Eigen::Infinity>() <= 1e-7);
}

TEST_CASE("twisted state on C_5 is a certified nonglobal local minimum") {
  const Graph g = cycle_graph(5);
  const PhaseState tw = twisted_state(5, 1);
  CHECK(grad(g, tw).lpNorm<Eigen::Infinity>() <= 1e-8);
  CHECK(!is_synchronized(tw));
  CHECK(energy(g, tw) > 1e-3);  // strictly above the global minimum 0
  const CriticalityReport rep = certify_critical(g, tw);
  CHECK(rep.classification == Criticality::kNonglobalLocalMin);
  CHECK(!rep.degenerate);
  CHECK(rep.quotient_hessian_eigs.minCoeff() >= 1e-6);
}

TEST_CASE("C_5 certification is stable across tol_hess in [1e-8, 1e-4]") {
  const Graph g = cycle_graph(5);
  const PhaseState tw = twisted_state(5, 1);
  for (const double tol : {1e-8, 1e-6, 1e-4}) {
    const CriticalityReport rep = certify_critical(g, tw, 1e-8, tol);
    CHECK(rep.classification == Criticality::kNonglobalLocalMin);
    CHECK(!rep.degenerate);
  }
}

TEST_CASE("twisted state on C_4 is a saddle or degenerate, not a strict minimum") {
  const Graph g = cycle_graph(4);
  const PhaseState tw = twisted_state(4, 1);
  const CriticalityReport rep = certify_critical(g, tw);
  CHECK(rep.classification != Criticality::kSynchronizedGlobal);
  CHECK((rep.classification == Criticality::kSaddle || rep.degenerate));
}

TEST_CASE("K_5 synchronizes from 50 random starts") {
  const Graph g = complete_graph(5);
  RngStream rng(43, 0);
  const SyncReport rep = empirical_global_sync(g, 50, rng);
  CHECK(rep.trials == 50);
  CHECK(rep.fraction_synchronized == doctest::Approx(1.0));
  CHECK(rep.evidence_only);
}

TEST_CASE("C_5 descent finds the twisted trap from some starts") {
  const Graph g = cycle_graph(5);
  RngStream rng(47, 0);
  const SyncReport rep = empirical_global_sync(g, 100, rng);
  CHECK(rep.fraction_synchronized < 1.0);
  REQUIRE(rep.has_worst_nonglobal);
  CHECK(rep.worst_nonglobal.classification == Criticality::kNonglobalLocalMin);
  CHECK(rep.worst_nonglobal.energy > 1e-3);
}

TEST_CASE("graph constructor enforces symmetry and zero diagonal") {
  Matrix bad(2, 2);
  bad << 0, 1, 2, 0;
  CHECK_THROWS(Graph(bad));
  Matrix diag(2, 2);
  diag << 1, 0, 0, 0;
  CHECK_THROWS(Graph(diag));
}

TEST_CASE("erdos-renyi generator produces valid graphs") {
  RngStream rng(53, 0);
  const Graph g = gen_erdos_renyi(20, 0.5, rng);
  CHECK(g.size() == 20);
  CHECK((g.weights - g.weights.transpose()).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(g.weights.diagonal().lpNorm<Eigen::Infinity>() == 0.0);
  int edges = 0;
  for (int i = 0; i < 20; ++i)
    for (int j = i + 1; j < 20; ++j)
      if (g.weights(i, j) != 0.0) ++edges;
  CHECK(edges > 50);
  CHECK(edges < 140);  // 190 possible, p = 0.5
}

TEST_CASE("random regular generator produces exact degrees") {
  RngStream rng(59, 0);
  const Graph g = gen_random_regular(12, 3, rng);
  for (int i = 0; i < 12; ++i) {
    CHECK(g.weights.row(i).sum() == doctest::Approx(3.0));
    CHECK(g.weights(i, i) == 0.0);
    for (int j = 0; j < 12; ++j)
      CHECK((g.weights(i, j) == 0.0 || g.weights(i, j) == 1.0));
  }
  CHECK_THROWS(gen_random_regular(7, 3, rng));  // nd odd
}

TEST_CASE("signed generator produces +-1 off-diagonal weights") {
  RngStream rng(61, 0);
  const Graph g = gen_signed_delta(30, 0.4, rng);
  int plus = 0, total = 0;
  for (int i = 0; i < 30; ++i)
    for (int j = i + 1; j < 30; ++j) {
      REQUIRE(std::abs(g.weights(i, j)) == 1.0);
      ++total;
      if (g.weights(i, j) > 0) ++plus;
    }
  // P(+1) = 0.9 with delta = 0.4.
  CHECK(static_cast<double>(plus) / total > 0.8);
}
