#include "lab/discrepancy.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <cmath>
#include <stdexcept>

namespace lab::disc {

bool is_sign_matrix(const IntMatrix& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != 1 && a(i, j) != -1) return false;
  return true;
}

std::int64_t coloring_value(const IntMatrix& a, const SignVector& x) {
  if (static_cast<Eigen::Index>(x.size()) != a.cols())
    throw std::invalid_argument("coloring_value: dimension mismatch");
  std::int64_t best = 0;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    std::int64_t s = 0;
    for (Eigen::Index c = 0; c < a.cols(); ++c) s += a(r, c) * x[c];
    best = std::max(best, std::abs(s));
  }
  return best;
}

namespace {

struct BnbState {
  const IntMatrix& a;
  const std::vector<std::vector<std::int64_t>>& suffix_abs;  // [col][row]
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool budget_hit = false;
  std::int64_t incumbent_value = INT64_MAX;
  SignVector incumbent_x;
  SignVector current;

  explicit BnbState(const IntMatrix& m,
                    const std::vector<std::vector<std::int64_t>>& sfx,
                    std::uint64_t b)
      : a(m), suffix_abs(sfx), budget(b), current(m.cols(), 1) {}

  void search(int col, std::vector<std::int64_t>& partial) {
    if (budget_hit) return;
    if (++nodes > budget) {
      budget_hit = true;
      return;
    }
    const Eigen::Index rows = a.rows();
    const Eigen::Index cols = a.cols();
    if (col == cols) {
      std::int64_t value = 0;
      for (Eigen::Index r = 0; r < rows; ++r)
        value = std::max(value, std::abs(partial[r]));
      if (value < incumbent_value) {
        incumbent_value = value;
        incumbent_x = current;
      }
      return;
    }
    // Row interval bound: |final row sum| >= |partial| - remaining mass.
    std::int64_t bound = 0;
    for (Eigen::Index r = 0; r < rows; ++r) {
      const std::int64_t slack = std::abs(partial[r]) - suffix_abs[col][r];
      bound = std::max(bound, slack);
    }
    if (bound >= incumbent_value) return;

    for (const int sign : {1, -1}) {
      current[col] = sign;
      for (Eigen::Index r = 0; r < rows; ++r) partial[r] += sign * a(r, col);
      search(col + 1, partial);
      for (Eigen::Index r = 0; r < rows; ++r) partial[r] -= sign * a(r, col);
      if (budget_hit) return;
    }
  }
};

}  // namespace

ColoringCertificate disc_exact(const IntMatrix& a, std::uint64_t node_budget) {
  if (a.rows() < 1 || a.cols() < 1)
    throw std::invalid_argument("disc_exact: empty matrix");
  const Eigen::Index rows = a.rows(), cols = a.cols();
  std::vector<std::vector<std::int64_t>> suffix_abs(
      cols + 1, std::vector<std::int64_t>(rows, 0));
  for (Eigen::Index c = cols - 1; c >= 0; --c)
    for (Eigen::Index r = 0; r < rows; ++r)
      suffix_abs[c][r] = suffix_abs[c + 1][r] + std::abs(a(r, c));

  BnbState state(a, suffix_abs, node_budget);
  // x and -x have equal value; pin the first column to +1.
  std::vector<std::int64_t> partial(rows);
  for (Eigen::Index r = 0; r < rows; ++r) partial[r] = a(r, 0);
  state.current[0] = 1;
  state.search(1, partial);

  ColoringCertificate cert;
  if (state.incumbent_x.empty()) {
    // Budget exhausted before any leaf; fall back to all +1.
    cert.x.assign(cols, 1);
    cert.value = coloring_value(a, cert.x);
    cert.exact = false;
  } else {
    cert.x = state.incumbent_x;
    cert.value = state.incumbent_value;
    cert.exact = !state.budget_hit;
  }
  cert.nodes_explored = state.nodes;
  return cert;
}

ColoringCertificate disc_heuristic(const IntMatrix& a, int restarts,
                                   RngStream& rng) {
  if (a.rows() < 1 || a.cols() < 1)
    throw std::invalid_argument("disc_heuristic: empty matrix");
  const Eigen::Index rows = a.rows(), cols = a.cols();
  ColoringCertificate best;
  best.value = INT64_MAX;
  for (int restart = 0; restart < std::max(restarts, 1); ++restart) {
    SignVector x(cols);
    for (Eigen::Index c = 0; c < cols; ++c)
      x[c] = (rng.next_u64() & 1) ? 1 : -1;
    std::vector<std::int64_t> sums(rows, 0);
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c) sums[r] += a(r, c) * x[c];
    auto value_of = [&](const std::vector<std::int64_t>& s) {
      std::int64_t v = 0;
      for (auto e : s) v = std::max(v, std::abs(e));
      return v;
    };
    std::int64_t value = value_of(sums);
    bool improved = true;
    while (improved && value > 0) {
      improved = false;
      for (Eigen::Index c = 0; c < cols; ++c) {
        std::int64_t flipped = 0;
        for (Eigen::Index r = 0; r < rows; ++r)
          flipped = std::max(flipped, std::abs(sums[r] - 2 * x[c] * a(r, c)));
        if (flipped < value) {
          for (Eigen::Index r = 0; r < rows; ++r) sums[r] -= 2 * x[c] * a(r, c);
          x[c] = -x[c];
          value = flipped;
          improved = true;
        }
      }
    }
    if (value < best.value) {
      best.x = x;
      best.value = value;
    }
  }
  best.exact = false;
  best.nodes_explored = 0;
  return best;
}

IntMatrix sylvester_hadamard(int k) {
  if (k < 0) throw std::invalid_argument("sylvester_hadamard: k must be >= 0");
  if (k > 14) throw std::invalid_argument("sylvester_hadamard: k too large");
  IntMatrix h(1, 1);
  h(0, 0) = 1;
  for (int level = 0; level < k; ++level) {
    const Eigen::Index m = h.rows();
    IntMatrix next(2 * m, 2 * m);
    next.topLeftCorner(m, m) = h;
    next.topRightCorner(m, m) = h;
    next.bottomLeftCorner(m, m) = h;
    next.bottomRightCorner(m, m) = -h;
    h = std::move(next);
  }
  return h;
}

SignVector x_natural(int k) {
  if (k < 0) throw std::invalid_argument("x_natural: k must be >= 0");
  if (k == 0) return {1};
  if (k == 1) return {1, 1};
  static const int y[4] = {1, 1, 1, -1};
  const SignVector inner = x_natural(k - 2);
  SignVector out;
  out.reserve(4 * inner.size());
  for (int yi : y)
    for (int xi : inner) out.push_back(yi * xi);
  return out;
}

HadamardDiscReport hadamard_disc_report(int k) {
  HadamardDiscReport report;
  report.k = k;
  const IntMatrix h = sylvester_hadamard(k);
  report.upper = coloring_value(h, x_natural(k));
  report.lower = std::sqrt(std::pow(2.0, k));
  if (k <= 4) {
    const ColoringCertificate cert = disc_exact(h);
    if (cert.exact) {
      report.has_exact = true;
      report.exact = cert.value;
    }
  }
  return report;
}

SpencerInstance::SpencerInstance(std::vector<Matrix> mats)
    : matrices(std::move(mats)) {
  if (matrices.empty())
    throw std::invalid_argument("SpencerInstance: no matrices");
  const Eigen::Index n = matrices[0].rows();
  for (const Matrix& m : matrices) {
    if (m.rows() != n || m.cols() != n)
      throw std::invalid_argument("SpencerInstance: dimension mismatch");
    if (!is_symmetric(m, 1e-12))
      throw std::invalid_argument("SpencerInstance: matrix not symmetric");
    if (eigsym_dense(m).spectral_norm() > 1.0 + 1e-12)
      throw std::invalid_argument("SpencerInstance: spectral norm exceeds 1");
  }
}

SpencerResult matrix_spencer_min_norm(const SpencerInstance& inst,
                                      std::uint64_t budget) {
  const int m = static_cast<int>(inst.matrices.size());
  if (m > 62) throw std::invalid_argument("matrix_spencer_min_norm: too many matrices");
  const std::uint64_t patterns = 1ULL << (m - 1);  // eps and -eps coincide

  SpencerResult result;
  result.signs.assign(m, 1);
  Matrix sum = Matrix::Zero(inst.dim(), inst.dim());
  for (const Matrix& a : inst.matrices) sum += a;
  result.value = eigsym_dense(sum).spectral_norm();
  result.exact = true;

  SignVector eps(m, 1);
  std::uint64_t evals = 1;
  // Gray-code walk over the trailing m-1 signs: one matrix flip per step.
  for (std::uint64_t g = 1; g < patterns; ++g) {
    if (evals >= budget) {
      result.exact = false;
      break;
    }
    const int bit = std::countr_zero(g);  // sign index bit+1 flips
    const int idx = bit + 1;
    eps[idx] = -eps[idx];
    sum += 2.0 * eps[idx] * inst.matrices[idx];
    const double value = eigsym_dense(sum).spectral_norm();
    ++evals;
    if (value < result.value) {
      result.value = value;
      result.signs = eps;
    }
  }
  result.normalized = result.value / std::sqrt(static_cast<double>(m));
  return result;
}

}  // namespace lab::disc
