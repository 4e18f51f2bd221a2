#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>

#include "groupdyn/clustering.hpp"

namespace {

groupdyn::WeightedGraph planted_graph(int blocks, int block_size, double p_in, double p_out,
                                      std::uint64_t seed) {
  const int n = blocks * block_size;
  groupdyn::WeightedGraph graph(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const bool same_block = u / block_size == v / block_size;
      if (coin(rng) < (same_block ? p_in : p_out)) graph.add_edge(u, v, 1.0);
    }
  }
  return graph;
}

// Granularity tuning plus the multilevel runs it triggers.
void BM_ClusterPlanted(benchmark::State& state) {
  const int blocks = int(state.range(0));
  const int block_size = int(state.range(1));
  const auto graph = planted_graph(blocks, block_size, 0.1, 0.002, 17);
  groupdyn::ClusterParams params;
  params.target_avg_size = double(block_size);
  params.seed = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(groupdyn::cluster(graph, params));
  }
  state.SetItemsProcessed(state.iterations() * std::int64_t(graph.edge_count()));
}
BENCHMARK(BM_ClusterPlanted)->Args({4, 100})->Args({8, 100})->Args({8, 200})->Unit(benchmark::kMillisecond);

// One multilevel run at a fixed granularity, the inner loop of the tuner.
void BM_ClusterAtGranularity(benchmark::State& state) {
  const auto graph = planted_graph(8, 100, 0.1, 0.002, 17);
  for (auto _ : state) {
    benchmark::DoNotOptimize(groupdyn::cluster_at_granularity(graph, 1.0, 5));
  }
  state.SetItemsProcessed(state.iterations() * std::int64_t(graph.edge_count()));
}
BENCHMARK(BM_ClusterAtGranularity)->Unit(benchmark::kMillisecond);

}  // namespace
