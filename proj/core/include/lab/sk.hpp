#pragma once

#include <cstdint>
#include <vector>

#include "lab/linalg.hpp"
#include "lab/rng.hpp"

namespace lab::sk {

/// Sherrington-Kirkpatrick instance: J = beta * W with W a GOE draw and the
/// diagonal zeroed (x_i^2 = 1 makes the diagonal a constant shift in the
/// exponent, irrelevant to the measure and the conditionals).
struct SkInstance {
  int n = 0;
  Matrix j;       // symmetric, zero diagonal
  Vector h;       // external field
  double beta = 0.0;
};

SkInstance sk_instance(int n, double beta, const Vector& h, RngStream& rng);

using SpinState = std::vector<int>;  // entries +-1

/// P(X_i = +1 | X_{-i} = x_{-i}) = 1 / (1 + exp(-2 (sum_j J_ij x_j + h_i))).
double conditional_prob(const SkInstance& inst, const SpinState& x, int i);

/// One heat-bath update at a uniformly chosen site; seeded runs reproduce
/// exactly.
SpinState glauber_step(const SkInstance& inst, const SpinState& x, RngStream& rng);

struct ExactKernel {
  Matrix p;           // 2^n x 2^n transition matrix, row-stochastic
  Vector stationary;  // mu by direct normalization
  double spectral_gap = 0.0;
  /// Smallest t with max-over-starts TV(P^t(x, .), mu) <= eps.
  int t_mix(double eps) const;

 private:
  friend ExactKernel exact_kernel(const SkInstance&);
  double worst_tv(const Matrix& pt) const;
};

/// Literal kernel construction; n <= 14. State s encodes spins by bits
/// (bit i set => x_i = +1). Stationarity mu P = mu is verified to 1e-12 at
/// construction.
ExactKernel exact_kernel(const SkInstance& inst);

/// Measure mu(x) over all 2^n states, normalized, same bit encoding.
Vector brute_force_measure(const SkInstance& inst);

struct ChainDiagnostics {
  std::vector<double> energy_trace;
  std::vector<double> magnetization_trace;
  std::int64_t flips = 0;  // accepted spin changes
  bool coupled = false;
  std::int64_t coalescence_step = -1;  // -1 if never coalesced
};

struct ChainOptions {
  std::int64_t steps = 0;
  int record_every = 1;
  bool coupled = false;  // second chain from the flipped start, shared draws
};

ChainDiagnostics run_chain(const SkInstance& inst, const SpinState& x0,
                           const ChainOptions& opts, RngStream& rng);

double hamiltonian(const SkInstance& inst, const SpinState& x);

/// max_i sum_j |J_ij| < 1.
bool dobrushin_check(const Matrix& j);
/// lambda_max(J) - lambda_min(J) < 1 - delta.
bool spectral_width_check(const Matrix& j, double delta);
/// Spectral width below 1.18, lambda_min < 0, and |lmax|/|lmin| within
/// [ratio_lo, ratio_hi] as the finite-n proxy for 1 + o(1).
bool anari_check(const Matrix& j, double ratio_lo = 0.9, double ratio_hi = 1.1);

}  // namespace lab::sk
