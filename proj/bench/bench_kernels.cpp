#include <benchmark/benchmark.h>

#include "treeband/coloring.hpp"
#include "treeband/decomp.hpp"
#include "treeband/obstructions.hpp"
#include "treeband/params.hpp"
#include "treeband/solver.hpp"

using namespace treeband;

namespace {

// Many small bags so the pair sweep dominates.
TreeDecomposition path_of_bags(int nodes, int width) {
  TreeDecomposition d;
  for (int t = 0; t < nodes; ++t) {
    std::vector<int> bag;
    for (int i = 0; i <= width; ++i) bag.push_back(t + i);
    d.bags.push_back(bag);
    if (t > 0) d.tree_edges.push_back({t - 1, t});
  }
  d.root = 0;
  return d;
}

void BM_overlap_serial(benchmark::State& s) {
  auto d = path_of_bags(static_cast<int>(s.range(0)), 6);
  for (auto _ : s) benchmark::DoNotOptimize(overlap_number_serial(d));
}
void BM_overlap_parallel(benchmark::State& s) {
  auto d = path_of_bags(static_cast<int>(s.range(0)), 6);
  for (auto _ : s) benchmark::DoNotOptimize(overlap_number(d));
}

void BM_dipole_serial(benchmark::State& s) {
  auto g = grid_graph(static_cast<int>(s.range(0)), static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(dipole_number_serial(g).value);
}
void BM_dipole_parallel(benchmark::State& s) {
  auto g = grid_graph(static_cast<int>(s.range(0)), static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(dipole_number(g).value);
}

void BM_brute_tbw_serial(benchmark::State& s) {
  auto g = cycle_graph(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(brute_force_treebandwidth_serial(g).value);
}
void BM_brute_tbw_parallel(benchmark::State& s) {
  auto g = cycle_graph(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(brute_force_treebandwidth(g).value);
}

Colouring grid_colouring(const Graph& g, int p) {
  return pcentered_from_layout(g, exact_treebandwidth(g).layout, p);
}
void BM_pcentered_serial(benchmark::State& s) {
  auto g = grid_graph(3, static_cast<int>(s.range(0)));
  auto c = grid_colouring(g, 2);
  for (auto _ : s) benchmark::DoNotOptimize(verify_pcentered_serial(g, c, 2).ok);
}
void BM_pcentered_parallel(benchmark::State& s) {
  auto g = grid_graph(3, static_cast<int>(s.range(0)));
  auto c = grid_colouring(g, 2);
  for (auto _ : s) benchmark::DoNotOptimize(verify_pcentered(g, c, 2).ok);
}

}  // namespace

BENCHMARK(BM_overlap_serial)->Arg(200)->Arg(800);
BENCHMARK(BM_overlap_parallel)->Arg(200)->Arg(800);
BENCHMARK(BM_dipole_serial)->Arg(5)->Arg(8);
BENCHMARK(BM_dipole_parallel)->Arg(5)->Arg(8);
BENCHMARK(BM_brute_tbw_serial)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_brute_tbw_parallel)->Arg(7)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pcentered_serial)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pcentered_parallel)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
