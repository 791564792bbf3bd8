#pragma once

#include <string>

#include "lab/linalg.hpp"
#include "lab/rng.hpp"

namespace lab::kuramoto {

/// Weighted coupling graph: symmetric weights, zero diagonal. Entries may be
/// negative (signed instances).
struct Graph {
  Matrix weights;

  explicit Graph(Matrix w);
  int size() const { return static_cast<int>(weights.rows()); }
};

/// Oscillator phases, normalized into [0, 2*pi) at construction.
struct PhaseState {
  Vector theta;

  explicit PhaseState(Vector angles);
  int size() const { return static_cast<int>(theta.size()); }
};

enum class Criticality {
  kSynchronizedGlobal,
  kNonglobalLocalMin,
  kSaddle,
  kNonconverged,
};

std::string to_string(Criticality c);

struct CriticalityReport {
  double grad_inf_norm = 0.0;
  Vector quotient_hessian_eigs;  // spectrum on the rotation-mode complement
  Criticality classification = Criticality::kNonconverged;
  bool degenerate = false;       // relevant min eigenvalue inside (-tol, tol)
  double energy = 0.0;
};

double energy(const Graph& g, const PhaseState& state);
Vector grad(const Graph& g, const PhaseState& state);
Matrix hessian(const Graph& g, const PhaseState& state);

struct DescentOptions {
  double initial_step = 0.1;
  double backtrack_factor = 0.5;
  double tol_grad = 1e-8;
  int max_iter = 20000;
};

struct DescentResult {
  PhaseState state;
  bool converged = false;
  int iterations = 0;
  double final_energy = 0.0;
};

/// Gradient descent with backtracking (simple decrease test). Energy never
/// increases across accepted steps.
DescentResult descend(const Graph& g, const PhaseState& start,
                      const DescentOptions& opts = {});

/// Mean resultant length of {e^{i theta_j}}; 1 at synchrony.
double mean_resultant_length(const PhaseState& state);

/// A state is synchronized when the mean resultant length exceeds 1 - 1e-6.
bool is_synchronized(const PhaseState& state);

/// Classifies a state by gradient norm and by the Hessian spectrum
/// restricted to the orthogonal complement of the global rotation mode.
/// Degenerate second-order cases are flagged, and classified conservatively
/// as non-global local minimum candidates.
CriticalityReport certify_critical(const Graph& g, const PhaseState& state,
                                   double tol_grad = 1e-8,
                                   double tol_hess = 1e-6);

struct SyncReport {
  double fraction_synchronized = 0.0;
  int trials = 0;
  bool has_worst_nonglobal = false;
  CriticalityReport worst_nonglobal;
  // Monte Carlo evidence only; absence of bad minima is never proven.
  bool evidence_only = true;
};

SyncReport empirical_global_sync(const Graph& g, int trials, RngStream& rng,
                                 const DescentOptions& opts = {},
                                 double tol_hess = 1e-6);

Graph gen_erdos_renyi(int n, double p, RngStream& rng);

/// Configuration-model pairing, resampled from scratch on any self-loop or
/// multi-edge. Exact uniformity over d-regular graphs is not claimed.
Graph gen_random_regular(int n, int d, RngStream& rng);

/// Symmetric +-1 off-diagonal weights, P(+1) = 1/2 + delta, zero diagonal.
Graph gen_signed_delta(int n, double delta, RngStream& rng);

}  // namespace lab::kuramoto
