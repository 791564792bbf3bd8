#include "lab/kuramoto.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace lab::kuramoto {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0) w += kTwoPi;
  return w;
}

}  // namespace

Graph::Graph(Matrix w) : weights(std::move(w)) {
  if (weights.rows() != weights.cols())
    throw std::invalid_argument("Graph: weight matrix must be square");
  if (!is_symmetric(weights, 0.0))
    throw std::invalid_argument("Graph: weights must be symmetric");
  for (Eigen::Index i = 0; i < weights.rows(); ++i)
    if (weights(i, i) != 0.0)
      throw std::invalid_argument("Graph: diagonal must be zero");
}

PhaseState::PhaseState(Vector angles) : theta(std::move(angles)) {
  if (!theta.allFinite())
    throw std::invalid_argument("PhaseState: non-finite angle");
  for (Eigen::Index i = 0; i < theta.size(); ++i) theta(i) = wrap_angle(theta(i));
}

std::string to_string(Criticality c) {
  switch (c) {
    case Criticality::kSynchronizedGlobal: return "synchronized-global";
    case Criticality::kNonglobalLocalMin: return "nonglobal-local-min";
    case Criticality::kSaddle: return "saddle";
    case Criticality::kNonconverged: return "nonconverged";
  }
  return "unknown";
}

double energy(const Graph& g, const PhaseState& state) {
  if (g.size() != state.size())
    throw std::invalid_argument("energy: dimension mismatch");
  const int n = g.size();
  double e = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      e += g.weights(i, j) * (1.0 - std::cos(state.theta(i) - state.theta(j)));
  return 0.5 * e;
}

Vector grad(const Graph& g, const PhaseState& state) {
  if (g.size() != state.size())
    throw std::invalid_argument("grad: dimension mismatch");
  const int n = g.size();
  Vector out = Vector::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(i) += g.weights(i, j) * std::sin(state.theta(i) - state.theta(j));
  return out;
}

Matrix hessian(const Graph& g, const PhaseState& state) {
  if (g.size() != state.size())
    throw std::invalid_argument("hessian: dimension mismatch");
  const int n = g.size();
  Matrix h = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double c = g.weights(i, j) * std::cos(state.theta(i) - state.theta(j));
      h(i, j) = -c;
      diag += c;
    }
    h(i, i) = diag;  // rows sum to zero: the rotation mode is exact
  }
  return h;
}

DescentResult descend(const Graph& g, const PhaseState& start,
                      const DescentOptions& opts) {
  Vector theta = start.theta;
  double e = energy(g, PhaseState(theta));
  int iter = 0;
  bool converged = false;
  for (; iter < opts.max_iter; ++iter) {
    const Vector gr = grad(g, PhaseState(theta));
    if (gr.lpNorm<Eigen::Infinity>() <= opts.tol_grad) {
      converged = true;
      break;
    }
    double step = opts.initial_step;
    bool accepted = false;
    while (step > 1e-16) {
      Vector candidate = theta - step * gr;
      const double e_new = energy(g, PhaseState(candidate));
      if (e_new < e) {
        theta = std::move(candidate);
        e = e_new;
        accepted = true;
        break;
      }
      step *= opts.backtrack_factor;
    }
    if (!accepted) break;  // no decrease along -grad at machine scale
  }
  DescentResult result{PhaseState(theta), converged, iter, e};
  return result;
}

double mean_resultant_length(const PhaseState& state) {
  const int n = state.size();
  if (n == 0) return 1.0;
  double cs = 0.0, sn = 0.0;
  for (int i = 0; i < n; ++i) {
    cs += std::cos(state.theta(i));
    sn += std::sin(state.theta(i));
  }
  return std::sqrt(cs * cs + sn * sn) / n;
}

bool is_synchronized(const PhaseState& state) {
  return mean_resultant_length(state) > 1.0 - 1e-6;
}

CriticalityReport certify_critical(const Graph& g, const PhaseState& state,
                                   double tol_grad, double tol_hess) {
  CriticalityReport report;
  report.energy = energy(g, state);
  report.grad_inf_norm = grad(g, state).lpNorm<Eigen::Infinity>();
  const int n = g.size();

  // Hessian on the orthogonal complement of the all-ones rotation mode.
  if (n > 1) {
    Vector ones = Vector::Ones(n);
    Eigen::HouseholderQR<Matrix> qr(ones);
    const Matrix q = qr.householderQ();
    const Matrix basis = q.rightCols(n - 1);
    const Matrix restricted = basis.transpose() * hessian(g, state) * basis;
    report.quotient_hessian_eigs =
        eigsym_dense(0.5 * (restricted + restricted.transpose())).eigenvalues;
  } else {
    report.quotient_hessian_eigs = Vector();
  }

  if (report.grad_inf_norm > tol_grad) {
    report.classification = Criticality::kNonconverged;
    return report;
  }
  const bool synced = is_synchronized(state);
  const double min_eig = report.quotient_hessian_eigs.size() > 0
                             ? report.quotient_hessian_eigs(0)
                             : 0.0;
  if (synced) {
    report.classification = Criticality::kSynchronizedGlobal;
    return report;
  }
  if (min_eig <= -tol_hess) {
    report.classification = Criticality::kSaddle;
    return report;
  }
  report.classification = Criticality::kNonglobalLocalMin;
  report.degenerate = min_eig < tol_hess;  // linear analysis inconclusive
  return report;
}

SyncReport empirical_global_sync(const Graph& g, int trials, RngStream& rng,
                                 const DescentOptions& opts, double tol_hess) {
  if (trials < 1)
    throw std::invalid_argument("empirical_global_sync: trials must be >= 1");
  SyncReport report;
  report.trials = trials;
  int synced = 0;
  for (int t = 0; t < trials; ++t) {
    Vector theta(g.size());
    for (int i = 0; i < g.size(); ++i) theta(i) = rng.uniform() * kTwoPi;
    const DescentResult run = descend(g, PhaseState(theta), opts);
    const CriticalityReport cert =
        certify_critical(g, run.state, 10.0 * opts.tol_grad, tol_hess);
    if (cert.classification == Criticality::kSynchronizedGlobal) {
      ++synced;
    } else if (cert.classification == Criticality::kNonglobalLocalMin &&
               (!report.has_worst_nonglobal ||
                cert.energy < report.worst_nonglobal.energy)) {
      report.has_worst_nonglobal = true;
      report.worst_nonglobal = cert;
    }
  }
  report.fraction_synchronized = static_cast<double>(synced) / trials;
  return report;
}

Graph gen_erdos_renyi(int n, double p, RngStream& rng) {
  if (n < 1 || p < 0.0 || p > 1.0)
    throw std::invalid_argument("gen_erdos_renyi: invalid parameters");
  Matrix w = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.uniform() < p) w(i, j) = w(j, i) = 1.0;
  return Graph(std::move(w));
}

Graph gen_random_regular(int n, int d, RngStream& rng) {
  if (n < 1 || d < 0 || d >= n || (static_cast<long long>(n) * d) % 2 != 0)
    throw std::invalid_argument("gen_random_regular: invalid parameters");
  std::vector<int> stubs;
  stubs.reserve(static_cast<std::size_t>(n) * d);
  for (int attempt = 0; attempt < 100000; ++attempt) {
    stubs.clear();
    for (int v = 0; v < n; ++v)
      for (int s = 0; s < d; ++s) stubs.push_back(v);
    for (std::size_t i = stubs.size(); i > 1; --i)
      std::swap(stubs[i - 1], stubs[rng.uniform_below(i)]);
    Matrix w = Matrix::Zero(n, n);
    bool defective = false;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      const int a = stubs[i], b = stubs[i + 1];
      if (a == b || w(a, b) != 0.0) {
        defective = true;
        break;
      }
      w(a, b) = w(b, a) = 1.0;
    }
    if (!defective) return Graph(std::move(w));
  }
  throw std::runtime_error("gen_random_regular: pairing kept failing");
}

Graph gen_signed_delta(int n, double delta, RngStream& rng) {
  if (n < 1 || delta < 0.0 || delta > 0.5)
    throw std::invalid_argument("gen_signed_delta: invalid parameters");
  Matrix w = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      w(i, j) = w(j, i) = (rng.uniform() < 0.5 + delta) ? 1.0 : -1.0;
  return Graph(std::move(w));
}

}  // namespace lab::kuramoto
