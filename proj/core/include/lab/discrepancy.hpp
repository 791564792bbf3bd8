#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "lab/linalg.hpp"
#include "lab/rng.hpp"

namespace lab::disc {

/// Integer matrix; sign matrices are the special case of all entries +-1.
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using SignVector = std::vector<int>;  // entries +-1

bool is_sign_matrix(const IntMatrix& a);

/// Result of an exact or heuristic coloring search. `value` is always the
/// integer-exact infinity norm of A x for the stored coloring.
struct ColoringCertificate {
  SignVector x;
  std::int64_t value = 0;
  bool exact = false;
  std::uint64_t nodes_explored = 0;
};

std::int64_t coloring_value(const IntMatrix& a, const SignVector& x);

/// Exact discrepancy by branch-and-bound over sign assignments with row
/// partial-sum interval pruning. Columns are branched in order, +1 first;
/// the first column is pinned to +1 (x and -x give equal values). If the
/// node budget runs out the incumbent is returned with exact=false.
ColoringCertificate disc_exact(const IntMatrix& a,
                               std::uint64_t node_budget = UINT64_MAX);

/// Random restarts plus single-flip local search. Always an upper bound on
/// disc(A); exact is never claimed.
ColoringCertificate disc_heuristic(const IntMatrix& a, int restarts,
                                   RngStream& rng);

/// Sylvester Hadamard matrix of size 2^k x 2^k.
IntMatrix sylvester_hadamard(int k);

/// The recursive +-1 vector built from y = (1,1,1,-1): base cases (1) and
/// (1,1), then each level is y tensor the vector two levels down.
SignVector x_natural(int k);

struct HadamardDiscReport {
  int k = 0;
  std::int64_t upper = 0;   // ||H_k x_natural||_inf, integer exact
  double lower = 0.0;       // sqrt(2^k), from orthogonality
  bool has_exact = false;
  std::int64_t exact = 0;
};

/// Upper/lower bracket for disc(H_k); exact value filled by exhaustive
/// branch-and-bound when k <= 4.
HadamardDiscReport hadamard_disc_report(int k);

/// Instance for signed spectral-norm minimization: symmetric matrices with
/// spectral norm at most 1 (checked at construction).
struct SpencerInstance {
  std::vector<Matrix> matrices;

  explicit SpencerInstance(std::vector<Matrix> mats);
  int dim() const { return matrices.empty() ? 0 : static_cast<int>(matrices[0].rows()); }
};

struct SpencerResult {
  SignVector signs;
  double value = 0.0;          // spectral norm of the signed sum
  double normalized = 0.0;     // value / sqrt(m)
  bool exact = false;
};

/// Minimizes ||sum_i eps_i A_i|| over sign patterns by enumeration (eps and
/// -eps are equivalent, so 2^{m-1} spectral-norm evaluations). `budget`
/// caps the number of evaluations; exceeding it returns the best found with
/// exact=false.
SpencerResult matrix_spencer_min_norm(const SpencerInstance& inst,
                                      std::uint64_t budget = UINT64_MAX);

}  // namespace lab::disc
