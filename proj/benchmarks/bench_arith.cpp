#include <benchmark/benchmark.h>

#include "reslab/arith.hpp"
#include "reslab/resonator.hpp"
#include "reslab/tau.hpp"

namespace {

void BM_TauExpansion(benchmark::State& state) {
  const auto limit = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reslab::ramanujan_tau_expansion(limit));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TauExpansion)->RangeMultiplier(4)->Range(1 << 12, 1 << 20)->Unit(benchmark::kMillisecond)->Complexity();

void BM_FractionalDivisor(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(reslab::d_z_coefficients(0.5, state.range(0)));
}
BENCHMARK(BM_FractionalDivisor)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_BuildPolynomials(benchmark::State& state) {
  const auto table = reslab::build_delta_table(1 << 16);
  const auto profile = reslab::make_profile(static_cast<double>(state.range(0)), 0.01, reslab::ProfileMode::kCustom,
                                            reslab::CustomWindow{100, 1e4, 5});
  for (auto _ : state) benchmark::DoNotOptimize(reslab::build_polynomials(profile, table));
}
BENCHMARK(BM_BuildPolynomials)->Arg(400)->Arg(2000)->Unit(benchmark::kMicrosecond);

}  // namespace
