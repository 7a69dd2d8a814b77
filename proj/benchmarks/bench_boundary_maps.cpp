#include <benchmark/benchmark.h>

#include "wlocc/boundary_maps.hpp"

using namespace wlocc;

static void BM_FiniteChoi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(instrument_choi(jgamma_finite(0.5, n)));
}
BENCHMARK(BM_FiniteChoi)->Arg(16)->Arg(1024);

static void BM_LimitChoi(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(limit_choi(0.5));
}
BENCHMARK(BM_LimitChoi);
