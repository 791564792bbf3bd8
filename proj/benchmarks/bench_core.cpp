#include <benchmark/benchmark.h>

#include "lab/discrepancy.hpp"
#include "lab/kikuchi.hpp"
#include "lab/lanczos.hpp"
#include "lab/sk.hpp"

namespace {

void BM_DiscExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  lab::RngStream rng(1, 0);
  lab::disc::IntMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = (rng.next_u64() & 1) ? 1 : -1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lab::disc::disc_exact(a));
  }
}
BENCHMARK(BM_DiscExact)->Arg(10)->Arg(12)->Arg(14);

void BM_KikuchiMatvec(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  lab::RngStream rng(2, 0);
  const lab::kikuchi::SpikedTensor tensor =
      lab::kikuchi::gen_spiked_tensor(n, 4, 1.0, rng);
  const lab::kikuchi::KikuchiOperator op(tensor, 3);
  lab::Vector v(op.dim);
  for (std::uint64_t i = 0; i < op.dim; ++i) v(i) = rng.normal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(lab::kikuchi::kikuchi_matvec(op, v));
  }
}
BENCHMARK(BM_KikuchiMatvec)->Arg(12)->Arg(16)->Arg(20);

void BM_LanczosGoe(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  lab::RngStream rng(3, 0);
  const lab::Matrix w = lab::sample_goe(n, rng);
  const lab::LinearOperator apply = [&w](const lab::Vector& v) {
    return lab::Vector(w * v);
  };
  for (auto _ : state) {
    lab::RngStream lrng(3, 1);
    benchmark::DoNotOptimize(
        lab::lambda_extremes_lanczos(apply, n, 300, 1e-8, lrng));
  }
}
BENCHMARK(BM_LanczosGoe)->Arg(200)->Arg(500)->Arg(1000);

void BM_ExactKernel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  lab::RngStream rng(4, 0);
  const lab::sk::SkInstance inst =
      lab::sk::sk_instance(n, 0.1, lab::Vector::Zero(n), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lab::sk::exact_kernel(inst));
  }
}
BENCHMARK(BM_ExactKernel)->Arg(6)->Arg(8)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
