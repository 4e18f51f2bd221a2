#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace groupdyn {

// Undirected weighted graph over dense vertex indices. Parallel add_edge
// calls accumulate weight; self-loops are rejected by the builder.
struct WeightedGraph {
  int n = 0;
  std::vector<std::vector<std::pair<int, double>>> adj;

  explicit WeightedGraph(int vertices = 0) : n(vertices), adj(vertices) {}
  void add_edge(int u, int v, double w);
  std::size_t edge_count() const;
  double total_weight() const;
};

struct ClusterParams {
  double target_avg_size = 100.0;
  std::uint64_t seed = 1;
  // Bisection on the modularity granularity parameter stops once the mean
  // cluster size lands in [0.5*target, 2*target] or after this many
  // multilevel runs.
  int max_tuning_rounds = 24;
};

// Multi-level clustering: iterative heavy-edge-matching coarsening, base
// partition on the coarsest graph by local moving, projection with local
// refinement maximizing weighted modularity. Deterministic given seed.
//
// Returns clusters over the non-isolated vertices (disjoint, covering).
// A graph with zero edges degenerates to one singleton cluster per vertex.
std::vector<std::vector<int>> cluster(const WeightedGraph& graph, const ClusterParams& params);

// Single multilevel run at a fixed granularity (resolution) parameter;
// exposed for tests and tuning diagnostics.
std::vector<std::vector<int>> cluster_at_granularity(const WeightedGraph& graph,
                                                     double granularity, std::uint64_t seed);

}  // namespace groupdyn
