#pragma once

#include <optional>
#include <string>
#include <vector>

#include "groupdyn/corpus.hpp"

namespace groupdyn {

enum class InduceMode { directed, reciprocal, undirected };

// Node-induced subgraph of the follower graph for one group.
//   directed:   (u,v) present iff u follows v, both members
//   reciprocal: undirected edge iff both follow each other
//   undirected: undirected edge iff either follows the other
// adj holds out-neighbors in directed mode, neighbors otherwise; sorted.
struct InducedSubgraph {
  InduceMode mode = InduceMode::undirected;
  int n = 0;
  std::vector<UserId> vertex_ids;
  std::vector<std::vector<int>> adj;

  bool has_edge(int u, int v) const;  // directed: u -> v
  std::size_t edge_count() const;     // directed: arcs; otherwise unordered pairs
};

// Index of out-edges by follower for repeated per-group induction.
struct FollowerIndex {
  std::map<UserId, std::vector<UserId>> out;
  static FollowerIndex build(const std::vector<FollowerEdge>& edges);
};

InducedSubgraph induce(const std::vector<UserId>& members, const FollowerIndex& followers,
                       InduceMode mode);

// Undefined marker (nullopt) propagates downstream as a missing value.
std::optional<double> density(const InducedSubgraph& sub);          // needs |V| >= 2
std::optional<double> transitivity(const InducedSubgraph& sub);     // needs a connected triple
std::optional<double> avg_clustering(const InducedSubgraph& sub);   // reciprocal/undirected
double avg_shortest_path(const InducedSubgraph& sub);               // reciprocal/undirected

struct CohesionStats {
  std::optional<double> density;
  std::optional<double> transitivity;
  std::optional<double> avg_clustering;     // unset in directed mode
  std::optional<double> avg_shortest_path;  // unset in directed mode
};

CohesionStats compute_cohesion(const InducedSubgraph& sub);

// Statistics for one group under all three induced views of the follower graph.
struct GroupCohesion {
  CohesionStats directed;
  CohesionStats reciprocal;
  CohesionStats undirected;
};

GroupCohesion group_cohesion(const std::vector<UserId>& members, const FollowerIndex& followers);

}  // namespace groupdyn
