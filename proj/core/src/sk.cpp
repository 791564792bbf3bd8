#include "lab/sk.hpp"

#include <cmath>
#include <stdexcept>

namespace lab::sk {

SkInstance sk_instance(int n, double beta, const Vector& h, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sk_instance: n must be >= 1");
  if (beta < 0.0) throw std::invalid_argument("sk_instance: beta must be >= 0");
  if (h.size() != n) throw std::invalid_argument("sk_instance: field size mismatch");
  SkInstance inst;
  inst.n = n;
  inst.beta = beta;
  inst.h = h;
  inst.j = beta * sample_goe(n, rng);
  inst.j.diagonal().setZero();
  return inst;
}

double hamiltonian(const SkInstance& inst, const SpinState& x) {
  Vector xv(inst.n);
  for (int i = 0; i < inst.n; ++i) xv(i) = x[i];
  return 0.5 * xv.dot(inst.j * xv) + inst.h.dot(xv);
}

double conditional_prob(const SkInstance& inst, const SpinState& x, int i) {
  if (i < 0 || i >= inst.n)
    throw std::out_of_range("conditional_prob: site index out of range");
  double field = inst.h(i);
  for (int j = 0; j < inst.n; ++j)
    if (j != i) field += inst.j(i, j) * x[j];
  return 1.0 / (1.0 + std::exp(-2.0 * field));
}

SpinState glauber_step(const SkInstance& inst, const SpinState& x, RngStream& rng) {
  const int i = static_cast<int>(rng.uniform_below(inst.n));
  const double p_plus = conditional_prob(inst, x, i);
  SpinState next = x;
  next[i] = (rng.uniform() < p_plus) ? 1 : -1;
  return next;
}

Vector brute_force_measure(const SkInstance& inst) {
  if (inst.n > 20) throw std::invalid_argument("brute_force_measure: n too large");
  const std::size_t states = 1ULL << inst.n;
  Vector log_weights(states);
  SpinState x(inst.n);
  for (std::size_t s = 0; s < states; ++s) {
    for (int i = 0; i < inst.n; ++i) x[i] = (s >> i) & 1 ? 1 : -1;
    log_weights(s) = hamiltonian(inst, x);
  }
  const double shift = log_weights.maxCoeff();
  Vector mu = (log_weights.array() - shift).exp();
  mu /= mu.sum();
  return mu;
}

ExactKernel exact_kernel(const SkInstance& inst) {
  if (inst.n > 14) throw std::invalid_argument("exact_kernel: n too large");
  const int n = inst.n;
  const std::size_t states = 1ULL << n;
  ExactKernel kernel;
  kernel.p = Matrix::Zero(states, states);
  SpinState x(n);
  for (std::size_t s = 0; s < states; ++s) {
    for (int i = 0; i < n; ++i) x[i] = (s >> i) & 1 ? 1 : -1;
    double stay = 1.0;
    for (int i = 0; i < n; ++i) {
      const double p_plus = conditional_prob(inst, x, i);
      const double p_move = (x[i] == 1 ? 1.0 - p_plus : p_plus) / n;
      kernel.p(s, s ^ (1ULL << i)) = p_move;
      stay -= p_move;
    }
    kernel.p(s, s) = stay;
  }
  kernel.stationary = brute_force_measure(inst);

  const Vector check = kernel.p.transpose() * kernel.stationary;
  if ((check - kernel.stationary).lpNorm<Eigen::Infinity>() > 1e-12)
    throw std::runtime_error("exact_kernel: stationarity check failed");

  // Heat-bath chains are reversible: D^{1/2} P D^{-1/2} is symmetric, so the
  // whole spectrum is real.
  const Vector sqrt_mu = kernel.stationary.cwiseSqrt();
  Matrix sym = sqrt_mu.asDiagonal() * kernel.p;
  sym = sym * sqrt_mu.cwiseInverse().asDiagonal();
  const Spectrum spec = eigsym_dense(0.5 * (sym + sym.transpose()));
  double second_modulus = 0.0;
  const Eigen::Index count = spec.eigenvalues.size();
  // Largest eigenvalue is 1; the runner-up modulus is either the second
  // largest or the most negative one.
  if (count > 1)
    second_modulus = std::max(std::abs(spec.eigenvalues(count - 2)),
                              std::abs(spec.eigenvalues(0)));
  kernel.spectral_gap = 1.0 - second_modulus;
  return kernel;
}

double ExactKernel::worst_tv(const Matrix& pt) const {
  double worst = 0.0;
  for (Eigen::Index row = 0; row < pt.rows(); ++row) {
    const double tv = 0.5 * (pt.row(row).transpose() - stationary).lpNorm<1>();
    worst = std::max(worst, tv);
  }
  return worst;
}

int ExactKernel::t_mix(double eps) const {
  if (worst_tv(p) <= eps) return 1;
  // Double until mixed, then binary search (TV from the worst start is
  // non-increasing in t).
  Matrix power = p;
  long t = 1;
  while (worst_tv(power) > eps) {
    if (t > (1L << 30)) throw std::runtime_error("t_mix: chain mixes too slowly");
    power = power * power;
    t *= 2;
  }
  long lo = t / 2, hi = t;  // lo fails, hi passes
  while (hi - lo > 1) {
    const long mid = lo + (hi - lo) / 2;
    // P^mid by binary exponentiation.
    Matrix acc = Matrix::Identity(p.rows(), p.cols());
    Matrix base = p;
    long e = mid;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    if (worst_tv(acc) <= eps) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return static_cast<int>(hi);
}

ChainDiagnostics run_chain(const SkInstance& inst, const SpinState& x0,
                           const ChainOptions& opts, RngStream& rng) {
  if (static_cast<int>(x0.size()) != inst.n)
    throw std::invalid_argument("run_chain: start state size mismatch");
  ChainDiagnostics diag;
  diag.coupled = opts.coupled;
  SpinState x = x0;
  SpinState y;
  if (opts.coupled) {
    y = x0;
    for (int& s : y) s = -s;
  }
  for (std::int64_t step = 0; step < opts.steps; ++step) {
    const int i = static_cast<int>(rng.uniform_below(inst.n));
    const double u = rng.uniform();
    const int old = x[i];
    x[i] = (u < conditional_prob(inst, x, i)) ? 1 : -1;
    if (x[i] != old) ++diag.flips;
    if (opts.coupled) {
      // Grand coupling: same site, same uniform.
      y[i] = (u < conditional_prob(inst, y, i)) ? 1 : -1;
      if (diag.coalescence_step < 0 && x == y) diag.coalescence_step = step + 1;
    }
    if (opts.record_every > 0 && step % opts.record_every == 0) {
      diag.energy_trace.push_back(hamiltonian(inst, x));
      double mag = 0.0;
      for (int s : x) mag += s;
      diag.magnetization_trace.push_back(mag / inst.n);
    }
  }
  return diag;
}

bool dobrushin_check(const Matrix& j) {
  return j.cwiseAbs().rowwise().sum().maxCoeff() < 1.0;
}

bool spectral_width_check(const Matrix& j, double delta) {
  return eigsym_dense(j).width() < 1.0 - delta;
}

bool anari_check(const Matrix& j, double ratio_lo, double ratio_hi) {
  const Spectrum spec = eigsym_dense(j);
  if (spec.min() == 0.0 && spec.max() == 0.0) return true;  // degenerate J = 0
  if (spec.width() >= 1.18) return false;
  if (!(spec.min() < 0.0)) return false;
  const double ratio = std::abs(spec.max()) / std::abs(spec.min());
  return ratio >= ratio_lo && ratio <= ratio_hi;
}

}  // namespace lab::sk
