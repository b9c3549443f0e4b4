#include <benchmark/benchmark.h>

#include <cmath>

#include "hkp/hkp.hpp"

namespace {

/// Radius 1 - 2^-k for k = state.range(0).
double radius(const benchmark::State& state) { return 1.0 - std::ldexp(1.0, -static_cast<int>(state.range(0))); }

void BM_IntegrateIndicator(benchmark::State& state) {
  auto f = hkp::BoundaryFunction::indicator(-1.0, 0.5) + hkp::BoundaryFunction::sine(3);
  for (auto _ : state) benchmark::DoNotOptimize(hkp::integrate(f, -3.0, 3.0).value);
}
BENCHMARK(BM_IntegrateIndicator);

void BM_IntegrateOscillatory(benchmark::State& state) {
  auto ex = hkp::example_b();
  for (auto _ : state) benchmark::DoNotOptimize(hkp::integrate(ex.f, -3.0, 3.0).value);
}
BENCHMARK(BM_IntegrateOscillatory);

void BM_PoissonEvalIndicator(benchmark::State& state) {
  auto u = hkp::HarmonicFunction::poisson(hkp::BoundaryFunction::indicator(-1.0, 0.5));
  const double r = radius(state);
  for (auto _ : state) benchmark::DoNotOptimize(hkp::poisson_eval(u, r, 0.3));
}
BENCHMARK(BM_PoissonEvalIndicator)->DenseRange(1, 12, 3);

void BM_PoissonEvalOscillatory(benchmark::State& state) {
  auto u = hkp::HarmonicFunction::poisson(hkp::example_b().f);
  const double r = radius(state);
  for (auto _ : state) benchmark::DoNotOptimize(hkp::poisson_eval(u, r, 0.3));
}
BENCHMARK(BM_PoissonEvalOscillatory)->DenseRange(1, 10, 3)->Unit(benchmark::kMillisecond);

void BM_AlexiewiczNorm(benchmark::State& state) {
  auto f = hkp::BoundaryFunction::sine(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hkp::alexiewicz_norm(f));
}
BENCHMARK(BM_AlexiewiczNorm)->RangeMultiplier(4)->Range(1, 64)->Unit(benchmark::kMillisecond);

void BM_KernelLpNorm(benchmark::State& state) {
  const double r = radius(state);
  for (auto _ : state) benchmark::DoNotOptimize(hkp::kernel_lp_norm(r, 2.5));
}
BENCHMARK(BM_KernelLpNorm)->DenseRange(2, 12, 5);

}  // namespace

BENCHMARK_MAIN();
