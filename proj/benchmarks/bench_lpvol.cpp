#include <benchmark/benchmark.h>

#include "lpvol/kernels.hpp"
#include "lpvol/montecarlo.hpp"
#include "lpvol/specfun.hpp"
#include "lpvol/volumes.hpp"

namespace {

using namespace lpvol;

void BM_gamma(benchmark::State& state) {
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::gamma(x));
    x = x < 99.0 ? x + 0.37 : 0.3;
  }
}
BENCHMARK(BM_gamma);

void BM_digamma(benchmark::State& state) {
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::digamma(x));
    x = x < 49.0 ? x + 0.37 : 0.3;
  }
}
BENCHMARK(BM_digamma);

void BM_gamma_kernel(benchmark::State& state) {
  const double p = static_cast<double>(state.range(0));
  double s = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::gamma_kernel(p, s));
    s = s < 8.0 ? s + 0.173 : 0.1;
  }
}
BENCHMARK(BM_gamma_kernel)->Arg(3)->Arg(26);

void BM_delta_kernel(benchmark::State& state) {
  double s = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::delta_kernel(4.0 / 3.0, s));
    s = s < 3.0 ? s + 0.11 : 0.1;
  }
}
BENCHMARK(BM_delta_kernel);

void BM_section_volume_diag(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Direction a = Direction::diag(n, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(volumes::section_volume(n, 3.0, a));
  }
}
BENCHMARK(BM_section_volume_diag)->Arg(50)->Arg(400);

void BM_projection_volume_a2(benchmark::State& state) {
  const Direction a = Direction::diag(2, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(volumes::projection_volume(2, 1.5, a));
  }
}
BENCHMARK(BM_projection_volume_a2);

void BM_mc_section(benchmark::State& state) {
  mc::McConfig cfg;
  cfg.samples = 10000;
  cfg.seed = 1;
  const Direction a = Direction::diag(20, 20);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc::mc_section(20, 3.0, a, cfg));
  }
}
BENCHMARK(BM_mc_section);

}  // namespace

BENCHMARK_MAIN();
