#include <benchmark/benchmark.h>

#include "reslab/archimedean.hpp"
#include "reslab/lfun.hpp"
#include "reslab/moments.hpp"
#include "reslab/special.hpp"

namespace {

const reslab::GammaSignature kDelta = reslab::GammaSignature::holomorphic(12);

void BM_LogGamma(benchmark::State& state) {
  reslab::cplx z(0.75, static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reslab::log_gamma(z));
    z += 1e-9;
  }
}
BENCHMARK(BM_LogGamma)->Arg(5)->Arg(500)->Arg(50000);

void BM_SolvePhase(benchmark::State& state) {
  const double T = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reslab::solve_T_theta(kDelta, 0.0, T / 2, 2 * T));
}
BENCHMARK(BM_SolvePhase)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_AfeEvaluate(benchmark::State& state) {
  static const auto table = reslab::build_delta_table(1 << 20);
  const reslab::AfeContext ctx(kDelta, table);
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ctx.evaluate(t));
}
BENCHMARK(BM_AfeEvaluate)->Arg(50)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_OscillatoryKernel(benchmark::State& state) {
  reslab::KernelSpec spec;
  spec.m2 = 10000;
  spec.weight = reslab::WeightSpec(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reslab::oscillatory_kernel(spec));
}
BENCHMARK(BM_OscillatoryKernel)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
