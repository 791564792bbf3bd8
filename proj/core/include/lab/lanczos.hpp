#pragma once

#include <functional>

#include "lab/linalg.hpp"
#include "lab/rng.hpp"

namespace lab {

/// Symmetric matrix-vector product closure.
using LinearOperator = std::function<Vector(const Vector&)>;

struct LanczosExtremes {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Extreme eigenvalues of a symmetric operator via Lanczos with full
/// reorthogonalization (desk scale, dim up to ~1e5).
///
/// The operator is checked for symmetry probabilistically (|<u,Av> - <Au,v>|
/// on random u, v); failure throws. Non-convergence within max_iters is
/// reported via converged=false, never as a silent value.
LanczosExtremes lambda_extremes_lanczos(const LinearOperator& apply, int dim,
                                        int max_iters, double tol,
                                        RngStream& rng);

}  // namespace lab
