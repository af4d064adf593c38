#include <benchmark/benchmark.h>

#include "mondrian/mondrian.hpp"

using namespace mondrian;

static void BM_SegmentedSieve(benchmark::State& state) {
  const u64 x = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rough_count_sieve(x, 1000.0));
}
BENCHMARK(BM_SegmentedSieve)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

static void BM_LegendrePhi(benchmark::State& state) {
  const u64 x = static_cast<u64>(state.range(0));
  const double z = g_eps(static_cast<double>(x) * static_cast<double>(x), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(rough_count_phi(x, z));
}
BENCHMARK(BM_LegendrePhi)
    ->Arg(1'000'000)
    ->Arg(100'000'000)
    ->Arg(3'000'000'000LL)
    ->Unit(benchmark::kMillisecond);

static void BM_CriterionScan(benchmark::State& state) {
  const u64 hi = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan(3, hi, ChainSetId::kDirect).members);
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * (hi - 2)));
}
BENCHMARK(BM_CriterionScan)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

static void BM_CriterionSingle(benchmark::State& state) {
  const u64 n = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(criterion_direct(n).holds);
}
BENCHMARK(BM_CriterionSingle)->Arg(720'720)->Arg(999'983);

static void BM_RefinedTotal(benchmark::State& state) {
  const u64 x = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(refined_total(x, 0.1).total);
}
BENCHMARK(BM_RefinedTotal)->Arg(1'000'000)->Arg(100'000'000)->Unit(benchmark::kMillisecond);

static void BM_TilingSearch(benchmark::State& state) {
  const u32 n = static_cast<u32>(state.range(0));
  SearchOptions opts;
  opts.necessary_condition_filter = false;
  opts.area_prune = false;
  for (auto _ : state) benchmark::DoNotOptimize(perfect_tiling_exists(n, opts).nodes);
}
BENCHMARK(BM_TilingSearch)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
