#include "lab/kikuchi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lab/lanczos.hpp"
#include "lab/subsets.hpp"

namespace lab::kikuchi {
namespace {

int subset_sign(const std::vector<int>& subset, const std::vector<int>& signal) {
  int sign = 1;
  for (int i : subset) sign *= signal[i];
  return sign;
}

}  // namespace

void SpikedTensor::set_lambda(double new_lambda) {
  lambda = new_lambda;
  std::vector<int> subset(r);
  for (int i = 0; i < r; ++i) subset[i] = i;
  std::uint64_t idx = 0;
  do {
    entries[idx] = lambda * subset_sign(subset, signal) + noise[idx];
    ++idx;
  } while (next_subset_colex(subset, n));
}

SpikedTensor gen_spiked_tensor(int n, int r, double lambda,
                               const std::vector<int>& x, RngStream& rng) {
  if (r % 2 != 0) throw std::invalid_argument("gen_spiked_tensor: r must be even");
  if (r < 2 || r > n) throw std::invalid_argument("gen_spiked_tensor: need 2 <= r <= n");
  if (lambda < 0.0) throw std::invalid_argument("gen_spiked_tensor: lambda must be >= 0");
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("gen_spiked_tensor: signal size mismatch");
  for (int xi : x)
    if (xi != 1 && xi != -1)
      throw std::invalid_argument("gen_spiked_tensor: signal entries must be +-1");

  SpikedTensor tensor;
  tensor.n = n;
  tensor.r = r;
  tensor.signal = x;
  const std::uint64_t count = binomial(n, r);
  tensor.noise.resize(count);
  tensor.entries.resize(count);
  // Noise drawn in colex order so a seed pins every entry.
  for (std::uint64_t i = 0; i < count; ++i) tensor.noise[i] = rng.normal();
  tensor.set_lambda(lambda);
  return tensor;
}

SpikedTensor gen_spiked_tensor(int n, int r, double lambda, RngStream& rng) {
  return gen_spiked_tensor(n, r, lambda, std::vector<int>(n, 1), rng);
}

KikuchiOperator::KikuchiOperator(const SpikedTensor& t, int ell_)
    : tensor(&t), ell(ell_) {
  if (ell < t.r / 2) throw std::invalid_argument("KikuchiOperator: need ell >= r/2");
  if (ell > t.n) throw std::invalid_argument("KikuchiOperator: need ell <= n");
  dim = binomial(t.n, ell);
}

Vector kikuchi_matvec(const KikuchiOperator& op, const Vector& v) {
  if (static_cast<std::uint64_t>(v.size()) != op.dim)
    throw std::invalid_argument("kikuchi_matvec: dimension mismatch");
  const SpikedTensor& t = *op.tensor;
  const int n = t.n;
  const int ell = op.ell;
  const int half = t.r / 2;

  Vector out = Vector::Zero(v.size());
  // No (r/2)-subset fits in the complement: the operator is identically zero.
  if (n - ell < half) return out;
  std::vector<int> row(ell);
  for (int i = 0; i < ell; ++i) row[i] = i;
  std::vector<int> complement(n - ell), kept, swapped_in, col, y_subset;
  std::uint64_t row_idx = 0;
  do {
    // Complement of the row subset in [n].
    complement.clear();
    {
      int next = 0;
      for (int i = 0; i < n; ++i) {
        if (next < ell && row[next] == i) {
          ++next;
        } else {
          complement.push_back(i);
        }
      }
    }
    double acc = 0.0;
    // Drop an (r/2)-subset of the row, add one from the complement.
    std::vector<int> drop(half);
    for (int i = 0; i < half; ++i) drop[i] = i;
    do {
      kept.clear();
      {
        int next = 0;
        for (int i = 0; i < ell; ++i) {
          if (next < half && drop[next] == i) {
            ++next;
          } else {
            kept.push_back(row[i]);
          }
        }
      }
      std::vector<int> removed(half);
      for (int i = 0; i < half; ++i) removed[i] = row[drop[i]];

      std::vector<int> add(half);
      for (int i = 0; i < half; ++i) add[i] = i;
      do {
        swapped_in.clear();
        for (int i = 0; i < half; ++i) swapped_in.push_back(complement[add[i]]);

        col.resize(ell);
        std::merge(kept.begin(), kept.end(), swapped_in.begin(),
                   swapped_in.end(), col.begin());
        y_subset.resize(t.r);
        std::merge(removed.begin(), removed.end(), swapped_in.begin(),
                   swapped_in.end(), y_subset.begin());

        const std::uint64_t col_idx = rank_subset_colex(col, n);
        acc += t.entries[rank_subset_colex(y_subset, n)] *
               v(static_cast<Eigen::Index>(col_idx));
      } while (next_subset_colex(add, n - ell));
    } while (next_subset_colex(drop, ell));
    out(static_cast<Eigen::Index>(row_idx)) = acc;
    ++row_idx;
  } while (next_subset_colex(row, n));
  return out;
}

Matrix assemble_dense(const KikuchiOperator& op) {
  if (op.dim > 4096) throw std::invalid_argument("assemble_dense: dimension too large");
  const auto dim = static_cast<Eigen::Index>(op.dim);
  Matrix m(dim, dim);
  Vector basis = Vector::Zero(dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    basis(j) = 1.0;
    m.col(j) = kikuchi_matvec(op, basis);
    basis(j) = 0.0;
  }
  return m;
}

double lambda_max_kikuchi(const KikuchiOperator& op, double tol, RngStream& rng,
                          int max_iters) {
  const LinearOperator apply = [&op](const Vector& v) {
    return kikuchi_matvec(op, v);
  };
  const LanczosExtremes ext = lambda_extremes_lanczos(
      apply, static_cast<int>(op.dim), max_iters, tol, rng);
  if (!ext.converged)
    throw std::runtime_error("lambda_max_kikuchi: Lanczos did not converge");
  return ext.lambda_max;
}

ThresholdScan threshold_scan(int n, int r, int ell,
                             const std::vector<double>& lambda_grid, int trials,
                             double pop_epsilon, RngStream& rng,
                             double lanczos_tol) {
  if (trials < 1) throw std::invalid_argument("threshold_scan: trials must be >= 1");
  if (lambda_grid.empty() || lambda_grid.front() != 0.0 ||
      !std::is_sorted(lambda_grid.begin(), lambda_grid.end()))
    throw std::invalid_argument("threshold_scan: grid must be ascending and start at 0");

  const std::size_t grid_size = lambda_grid.size();
  std::vector<std::vector<double>> lmax(grid_size, std::vector<double>(trials));
  for (int t = 0; t < trials; ++t) {
    RngStream trial_rng = rng.substream(static_cast<std::uint64_t>(t));
    // Noise frozen per trial across the grid: the scan isolates the signal.
    SpikedTensor tensor = gen_spiked_tensor(n, r, 0.0, trial_rng);
    for (std::size_t g = 0; g < grid_size; ++g) {
      tensor.set_lambda(lambda_grid[g]);
      const KikuchiOperator op(tensor, ell);
      RngStream lanczos_rng = trial_rng.substream(1000 + g);
      lmax[g][t] = lambda_max_kikuchi(op, lanczos_tol, lanczos_rng);
    }
  }

  ThresholdScan scan;
  scan.rows.resize(grid_size);
  for (std::size_t g = 0; g < grid_size; ++g) {
    double mean = 0.0;
    for (double v : lmax[g]) mean += v;
    mean /= trials;
    double var = 0.0;
    for (double v : lmax[g]) var += (v - mean) * (v - mean);
    var = trials > 1 ? var / (trials - 1) : 0.0;
    scan.rows[g] = {lambda_grid[g], mean, std::sqrt(var), false};
  }

  const double base_mean = scan.rows[0].mean_lmax;
  const double base_var = scan.rows[0].std_lmax * scan.rows[0].std_lmax;
  for (std::size_t g = 1; g < grid_size; ++g) {
    const double mean = scan.rows[g].mean_lmax;
    if (mean <= (1.0 + pop_epsilon) * base_mean) continue;
    if (trials > 1) {
      // Welch statistic against the lambda=0 column, one-sided 1% level.
      const double var = scan.rows[g].std_lmax * scan.rows[g].std_lmax;
      const double se = std::sqrt((var + base_var) / trials);
      if (se > 0.0 && (mean - base_mean) / se < 2.326) continue;
    }
    scan.rows[g].pop_flag = true;
    if (!scan.found) {
      scan.found = true;
      scan.lambda_natural = lambda_grid[g];
      scan.grid_spacing = lambda_grid[g] - lambda_grid[g - 1];
      scan.scaled_threshold =
          std::pow(static_cast<double>(n), r / 4.0) * scan.lambda_natural;
    }
  }
  return scan;
}

}  // namespace lab::kikuchi
