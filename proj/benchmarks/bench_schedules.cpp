#include <benchmark/benchmark.h>

#include "wlocc/roundopt.hpp"

using namespace wlocc;

static void BM_StarSchedule(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(star_schedule(static_cast<int>(state.range(0))).gain);
}
BENCHMARK(BM_StarSchedule)->Arg(6)->Arg(40);

static void BM_Step2Schedule(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(step2_schedule(static_cast<int>(state.range(0)), 0.5).gain);
}
BENCHMARK(BM_Step2Schedule)->Arg(6)->Arg(40);

static void BM_SplitSearch(benchmark::State& state) {
  const WState s = make_state(0.5, 0.25, 0.25);
  for (auto _ : state) benchmark::DoNotOptimize(split_search(static_cast<int>(state.range(0)), s).objective);
}
BENCHMARK(BM_SplitSearch)->Arg(10)->Arg(40);
