#include <benchmark/benchmark.h>

#include "wlocc/protocols.hpp"

using namespace wlocc;

static void BM_OptimalBlocksDouble(benchmark::State& state) {
  const auto p = theorem1_protocol<double>(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(epr_mass(execute(w_state(), p)));
}
BENCHMARK(BM_OptimalBlocksDouble)->Arg(2)->Arg(5)->Arg(10);

static void BM_OptimalBlocksExact(benchmark::State& state) {
  const auto p = theorem1_protocol<Rational>(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(epr_mass(execute(w_state<Rational>(), p)));
}
BENCHMARK(BM_OptimalBlocksExact)->Arg(2)->Arg(5)->Arg(10);

static void BM_ThreeStepProtocol(benchmark::State& state) {
  const WState s = make_state(0.5, 0.25, 0.25);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto p = lemma1_protocol(s, n, n, 0.005);
    benchmark::DoNotOptimize(expected_value(execute(s, p), Measure::Concurrence));
  }
}
BENCHMARK(BM_ThreeStepProtocol)->Arg(50)->Arg(200);
