#include <benchmark/benchmark.h>

#include <vector>

#include "parking/continuum.hpp"
#include "parking/densities.hpp"
#include "parking/gap_recursion.hpp"

namespace {

using namespace parking;

void BM_Advance(benchmark::State& state) {
  const auto k = state.range(0);
  auto w = recursion_window::for_gap({k, k});
  for (auto _ : state) benchmark::DoNotOptimize(w.advance());
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Advance)->RangeMultiplier(16)->Range(1, 1 << 16);

void BM_TLimit(benchmark::State& state) {
  const auto k = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(t_limit({k, 2 * k}, 1e-13).t_inf);
}
BENCHMARK(BM_TLimit)->RangeMultiplier(8)->Range(8, 1 << 15)->Unit(benchmark::kMicrosecond);

void BM_DensityTable(benchmark::State& state) {
  const auto k = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(make_density_table(k, 1e-13, default_table_limit, 1).filling);
}
BENCHMARK(BM_DensityTable)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMillisecond);

void BM_FillingAggregate(benchmark::State& state) {
  const auto k = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(filling_density_aggregate(k, 1e-13).value);
}
BENCHMARK(BM_FillingAggregate)->RangeMultiplier(16)->Range(16, 1 << 16)->Unit(benchmark::kMillisecond);

void BM_ExactGapExpectations(benchmark::State& state) {
  const auto n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(exact_gap_expectations({2, 3}, n).back());
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_ExactGapExpectations)->Arg(1 << 10)->Arg(1 << 16);

void BM_RenyiConstant(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(renyi_constant().m);
}
BENCHMARK(BM_RenyiConstant)->Unit(benchmark::kMillisecond);

void BM_Coverage(benchmark::State& state) {
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_coverage(20, h, false).values.back());
}
BENCHMARK(BM_Coverage)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace
