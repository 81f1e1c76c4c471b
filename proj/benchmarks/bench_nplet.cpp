#include <benchmark/benchmark.h>

#include "nplet/lattice.hpp"
#include "nplet/oracle.hpp"
#include "nplet/ranktest.hpp"
#include "nplet/search.hpp"

using namespace nplet;

namespace {

std::vector<ExponentTuple> quadruples(std::int64_t max_last) { return enumerate(4, max_last); }

}  // namespace

static void BM_DecideQuadruple(benchmark::State& state) {
  const auto t = ExponentTuple::make({3, 11, 17, state.range(0)});
  for (auto _ : state) benchmark::DoNotOptimize(decide(t));
}
BENCHMARK(BM_DecideQuadruple)->Arg(40)->Arg(101)->Arg(199);

static void BM_DecideSweep(benchmark::State& state) {
  const auto tuples = quadruples(state.range(0));
  for (auto _ : state) {
    for (const auto& t : tuples) benchmark::DoNotOptimize(decide(t));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * tuples.size()));
}
BENCHMARK(BM_DecideSweep)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_MinorGcd(benchmark::State& state) {
  const std::vector<std::int64_t> a{5, 13, 29, state.range(0)};
  const auto m = build_minors(a);
  for (auto _ : state) benchmark::DoNotOptimize(gcd(m[0], m[1]));
}
BENCHMARK(BM_MinorGcd)->Arg(60)->Arg(150);

static void BM_OrthogonalLattice(benchmark::State& state) {
  const auto tuples = quadruples(state.range(0));
  for (auto _ : state) {
    for (const auto& t : tuples) benchmark::DoNotOptimize(orthogonal_lattice(t));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * tuples.size()));
}
BENCHMARK(BM_OrthogonalLattice)->Arg(30)->Unit(benchmark::kMillisecond);

static void BM_RootScan(benchmark::State& state) {
  const auto t = ExponentTuple::make({2, 7, 9, state.range(0)});
  for (auto _ : state) benchmark::DoNotOptimize(root_scan(t));
}
BENCHMARK(BM_RootScan)->Arg(20)->Arg(40)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
