#include "lab/multifreq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "lab/lanczos.hpp"

namespace lab::multifreq {

Group parse_group(const std::string& name) {
  if (name == "zL") return Group::kRootsOfUnity;
  if (name == "u1") return Group::kContinuousU1;
  throw std::invalid_argument("parse_group: expected 'zL' or 'u1'");
}

MfInstance gen_instance(int n, int num_freqs, double lambda, Group group,
                        bool null_instance, RngStream& rng) {
  if (n < 1 || num_freqs < 1 || lambda < 0.0)
    throw std::invalid_argument("gen_instance: invalid parameters");
  MfInstance inst;
  inst.n = n;
  inst.num_freqs = num_freqs;
  inst.group = group;
  inst.group_order = group == Group::kRootsOfUnity ? num_freqs : 0;
  inst.lambda = lambda;
  inst.null_instance = null_instance;

  ComplexVector x(n);
  if (group == Group::kRootsOfUnity) {
    const int order = inst.group_order;
    for (int i = 0; i < n; ++i) {
      const double phase = 2.0 * std::numbers::pi *
                           static_cast<double>(rng.uniform_below(order)) / order;
      x(i) = std::polar(1.0, phase);
    }
  } else {
    for (int i = 0; i < n; ++i)
      x(i) = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
  }
  if (!null_instance) inst.signal = x;

  const double noise_scale = 1.0 / std::sqrt(static_cast<double>(n));
  const bool real_case =
      group == Group::kRootsOfUnity && inst.group_order == 2;
  for (int freq = 1; freq <= num_freqs; ++freq) {
    ComplexMatrix y;
    if (real_case) {
      // +-1 signal: the observation is real symmetric. A GOE draw already
      // has off-diagonal variance 1/n, matching W/sqrt(n) in the complex case.
      y = sample_goe(n, rng).cast<std::complex<double>>();
    } else {
      y = noise_scale * sample_gue_unit(n, rng);
    }
    const bool degenerate =
        group == Group::kRootsOfUnity && freq % inst.group_order == 0;
    if (!null_instance) {
      ComplexVector xk(n);
      for (int i = 0; i < n; ++i) xk(i) = std::pow(x(i), freq);
      y += (lambda / n) * xk * xk.adjoint();
    }
    // Exact Hermitian symmetrization of the signal+noise sum.
    y = 0.5 * (y + ComplexMatrix(y.adjoint()));
    inst.observations.push_back(std::move(y));
    inst.degenerate.push_back(degenerate);
  }
  return inst;
}

double pca_stat(const ComplexMatrix& y, RngStream& rng, double tol) {
  const int n = static_cast<int>(y.rows());
  if (y.size() == 0) return 0.0;
  // Real symmetric embedding: v = [Re z; Im z], w = Y z. Same extreme
  // eigenvalues (each with doubled multiplicity).
  const LinearOperator apply = [&y, n](const Vector& v) {
    ComplexVector z(n);
    for (int i = 0; i < n; ++i) z(i) = {v(i), v(n + i)};
    const ComplexVector w = y * z;
    Vector out(2 * n);
    for (int i = 0; i < n; ++i) {
      out(i) = w(i).real();
      out(n + i) = w(i).imag();
    }
    return out;
  };
  RngStream lanczos_rng = rng.substream(0x9ca);
  const LanczosExtremes ext =
      lambda_extremes_lanczos(apply, 2 * n, 400, tol, lanczos_rng);
  if (!ext.converged)
    throw std::runtime_error("pca_stat: Lanczos did not converge");
  return ext.lambda_max;
}

double combined_stat(const MfInstance& inst, RngStream& rng, CombineRule rule,
                     bool include_degenerate) {
  double acc = rule == CombineRule::kMaxOverFrequencies
                   ? -std::numeric_limits<double>::infinity()
                   : 0.0;
  bool any = false;
  for (int f = 0; f < inst.num_freqs; ++f) {
    if (inst.degenerate[f] && !include_degenerate) continue;
    any = true;
    const double stat = pca_stat(inst.observations[f], rng);
    if (rule == CombineRule::kMaxOverFrequencies) {
      acc = std::max(acc, stat);
    } else {
      acc += std::max(stat - 2.0, 0.0);
    }
  }
  if (!any)
    throw std::invalid_argument("combined_stat: all frequencies degenerate");
  return acc;
}

namespace {

double auc_of(const std::vector<double>& signal, const std::vector<double>& null) {
  // Rank statistic: P(signal > null) + 0.5 P(tie).
  double wins = 0.0;
  for (double s : signal)
    for (double z : null) {
      if (s > z) wins += 1.0;
      else if (s == z) wins += 0.5;
    }
  return wins / (static_cast<double>(signal.size()) * null.size());
}

}  // namespace

DetectionReport detection_experiment(int n, int num_freqs, double lambda,
                                     Group group, int trials, RngStream& rng,
                                     CombineRule rule) {
  if (trials < 2)
    throw std::invalid_argument("detection_experiment: trials must be >= 2");
  DetectionReport report;
  for (int t = 0; t < trials; ++t) {
    RngStream sig_rng = rng.substream(2 * static_cast<std::uint64_t>(t));
    RngStream null_rng = rng.substream(2 * static_cast<std::uint64_t>(t) + 1);
    const MfInstance sig = gen_instance(n, num_freqs, lambda, group, false, sig_rng);
    const MfInstance nul = gen_instance(n, num_freqs, lambda, group, true, null_rng);
    report.signal_stats.push_back(combined_stat(sig, sig_rng, rule));
    report.null_stats.push_back(combined_stat(nul, null_rng, rule));
  }
  report.auc = auc_of(report.signal_stats, report.null_stats);

  std::vector<double> sorted_null = report.null_stats;
  std::sort(sorted_null.begin(), sorted_null.end());
  const std::size_t cut =
      static_cast<std::size_t>(std::ceil(0.95 * sorted_null.size())) - 1;
  const double threshold = sorted_null[std::min(cut, sorted_null.size() - 1)];
  int detected = 0;
  for (double s : report.signal_stats)
    if (s > threshold) ++detected;
  report.power_at_5pct = static_cast<double>(detected) / trials;
  return report;
}

}  // namespace lab::multifreq
