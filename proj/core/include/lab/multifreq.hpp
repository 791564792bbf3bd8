#pragma once

#include <string>
#include <vector>

#include "lab/linalg.hpp"
#include "lab/rng.hpp"

namespace lab::multifreq {

enum class Group { kRootsOfUnity, kContinuousU1 };

Group parse_group(const std::string& name);  // "zL" or "u1"

/// Multi-frequency observations Y_l = (lambda/n) x^(l) (x^(l))^* + W^(l)/sqrt(n)
/// for l = 1..L, with x^(l) the entrywise l-th power of a unit-modulus
/// signal. Under the null the signal term is omitted.
struct MfInstance {
  int n = 0;
  int num_freqs = 0;
  Group group = Group::kContinuousU1;
  int group_order = 0;  // L for roots of unity, 0 for U(1)
  double lambda = 0.0;
  bool null_instance = false;
  ComplexVector signal;  // empty under null
  std::vector<ComplexMatrix> observations;
  /// Frequencies whose entrywise power is deterministic (l = 0 mod L for
  /// roots of unity) leak the signal trivially and are flagged here.
  std::vector<bool> degenerate;
};

MfInstance gen_instance(int n, int num_freqs, double lambda, Group group,
                        bool null_instance, RngStream& rng);

/// Top eigenvalue of one observation matrix (matrix-free Lanczos on the
/// real symmetric embedding of the Hermitian matrix).
double pca_stat(const ComplexMatrix& y, RngStream& rng, double tol = 1e-9);

enum class CombineRule { kMaxOverFrequencies, kSumAboveEdge };

/// Combined detection statistic over non-degenerate frequencies. The default
/// is the max of per-frequency top eigenvalues; the alternative sums
/// (top eigenvalue - 2)_+ over frequencies. `include_degenerate` re-includes
/// the flagged frequencies.
double combined_stat(const MfInstance& inst, RngStream& rng,
                     CombineRule rule = CombineRule::kMaxOverFrequencies,
                     bool include_degenerate = false);

struct DetectionReport {
  std::vector<double> signal_stats;  // one per trial
  std::vector<double> null_stats;
  double auc = 0.0;
  double power_at_5pct = 0.0;  // at the empirical 5% null quantile
};

DetectionReport detection_experiment(int n, int num_freqs, double lambda,
                                     Group group, int trials, RngStream& rng,
                                     CombineRule rule = CombineRule::kMaxOverFrequencies);

}  // namespace lab::multifreq
