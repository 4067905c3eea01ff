#include <benchmark/benchmark.h>

#include "parking/rng.hpp"
#include "parking/simulator.hpp"

namespace {

using namespace parking;

void BM_SimulateLot(benchmark::State& state) {
  const auto n = state.range(0);
  const auto k = state.range(1);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    stream_rng rng(42, trial++);
    benchmark::DoNotOptimize(simulate_lot(n, k, rng).counts.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SimulateLot)->Args({20, 2})->Args({1000, 2})->Args({100000, 2})->Args({100000, 64});

void BM_EstimateGapExpectation(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(estimate_gap_expectation(20, 2, state.range(0), 42).mean.data());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateGapExpectation)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_BruteForce(benchmark::State& state) {
  const auto n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_expectation(n, 1).data());
}
BENCHMARK(BM_BruteForce)->DenseRange(8, 14, 2);

}  // namespace

BENCHMARK_MAIN();
