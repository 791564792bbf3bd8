#pragma once

#include <cstdint>
#include <vector>

#include "lab/linalg.hpp"
#include "lab/rng.hpp"

namespace lab::kikuchi {

/// Order-r symmetric tensor observations: one value per sorted r-subset of
/// [n], keyed by colex rank. Entry for subset S is
/// lambda * prod_{i in S} x_i + Z_S with Z_S ~ N(0,1).
struct SpikedTensor {
  int n = 0;
  int r = 0;           // even
  double lambda = 0.0;
  std::vector<int> signal;      // +-1 per coordinate
  std::vector<double> noise;    // Z_S by colex rank
  std::vector<double> entries;  // Y_S by colex rank

  std::uint64_t subset_count() const { return entries.size(); }

  /// Rebuilds entries for a new lambda with the same frozen noise.
  void set_lambda(double new_lambda);
};

SpikedTensor gen_spiked_tensor(int n, int r, double lambda,
                               const std::vector<int>& x, RngStream& rng);
SpikedTensor gen_spiked_tensor(int n, int r, double lambda, RngStream& rng);

/// Matrix-free symmetric operator indexed by ell-subsets of [n]:
/// M_{I,J} = Y_{I delta J} when |I delta J| = r, else 0.
struct KikuchiOperator {
  const SpikedTensor* tensor = nullptr;
  int ell = 0;
  std::uint64_t dim = 0;

  KikuchiOperator(const SpikedTensor& t, int ell);
};

/// (Mv)_I = sum over J obtained by swapping an (r/2)-subset of I for an
/// (r/2)-subset of its complement. No matrix is materialized.
Vector kikuchi_matvec(const KikuchiOperator& op, const Vector& v);

/// Dense assembly, for oracle checks. Requires dim <= 4096.
Matrix assemble_dense(const KikuchiOperator& op);

/// Largest eigenvalue via matrix-free Lanczos.
double lambda_max_kikuchi(const KikuchiOperator& op, double tol, RngStream& rng,
                          int max_iters = 500);

struct ThresholdRow {
  double lambda = 0.0;
  double mean_lmax = 0.0;
  double std_lmax = 0.0;
  bool pop_flag = false;
};

struct ThresholdScan {
  std::vector<ThresholdRow> rows;
  bool found = false;
  double lambda_natural = 0.0;   // first grid value flagged as popped out
  double grid_spacing = 0.0;     // reported as the estimate's uncertainty
  double scaled_threshold = 0.0; // n^{r/4} * lambda_natural
};

/// Scans lambda_max over a lambda grid with noise frozen per trial across
/// the grid. A grid point pops out when its mean exceeds
/// (1 + pop_epsilon) * mean at lambda=0 with a Welch-test guard at the 1%
/// level. The grid must be ascending and include 0.
ThresholdScan threshold_scan(int n, int r, int ell,
                             const std::vector<double>& lambda_grid, int trials,
                             double pop_epsilon, RngStream& rng,
                             double lanczos_tol = 1e-8);

}  // namespace lab::kikuchi
