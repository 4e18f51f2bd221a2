#include "groupdyn/cohesion.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace groupdyn {

bool InducedSubgraph::has_edge(int u, int v) const {
  const auto& row = adj[std::size_t(u)];
  return std::binary_search(row.begin(), row.end(), v);
}

std::size_t InducedSubgraph::edge_count() const {
  std::size_t half_edges = 0;
  for (const auto& row : adj) half_edges += row.size();
  return mode == InduceMode::directed ? half_edges : half_edges / 2;
}

FollowerIndex FollowerIndex::build(const std::vector<FollowerEdge>& edges) {
  FollowerIndex index;
  for (const auto& e : edges) index.out[e.follower].push_back(e.followee);
  for (auto& [user, targets] : index.out) {
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  }
  return index;
}

InducedSubgraph induce(const std::vector<UserId>& members, const FollowerIndex& followers,
                       InduceMode mode) {
  InducedSubgraph sub;
  sub.mode = mode;
  sub.vertex_ids = members;
  std::sort(sub.vertex_ids.begin(), sub.vertex_ids.end());
  sub.vertex_ids.erase(std::unique(sub.vertex_ids.begin(), sub.vertex_ids.end()),
                       sub.vertex_ids.end());
  sub.n = int(sub.vertex_ids.size());
  std::map<UserId, int> index;
  for (int i = 0; i < sub.n; ++i) index.emplace(sub.vertex_ids[std::size_t(i)], i);

  auto follows = std::vector<std::vector<int>>(std::size_t(sub.n));
  for (int u = 0; u < sub.n; ++u) {
    auto it = followers.out.find(sub.vertex_ids[std::size_t(u)]);
    if (it == followers.out.end()) continue;
    for (const auto& target : it->second) {
      auto member = index.find(target);
      if (member != index.end() && member->second != u) follows[std::size_t(u)].push_back(member->second);
    }
    std::sort(follows[std::size_t(u)].begin(), follows[std::size_t(u)].end());
  }

  sub.adj.assign(std::size_t(sub.n), {});
  auto has_arc = [&](int u, int v) {
    const auto& row = follows[std::size_t(u)];
    return std::binary_search(row.begin(), row.end(), v);
  };
  switch (mode) {
    case InduceMode::directed:
      sub.adj = std::move(follows);
      break;
    case InduceMode::reciprocal:
      for (int u = 0; u < sub.n; ++u) {
        for (int v : follows[std::size_t(u)]) {
          if (has_arc(v, u)) sub.adj[std::size_t(u)].push_back(v);
        }
      }
      break;
    case InduceMode::undirected:
      for (int u = 0; u < sub.n; ++u) {
        for (int v : follows[std::size_t(u)]) {
          sub.adj[std::size_t(u)].push_back(v);
          sub.adj[std::size_t(v)].push_back(u);
        }
      }
      for (auto& row : sub.adj) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
      }
      break;
  }
  return sub;
}

std::optional<double> density(const InducedSubgraph& sub) {
  if (sub.n < 2) return std::nullopt;
  const double pairs = double(sub.n) * double(sub.n - 1);
  const double denom = sub.mode == InduceMode::directed ? pairs : pairs / 2.0;
  return double(sub.edge_count()) / denom;
}

std::optional<double> transitivity(const InducedSubgraph& sub) {
  if (sub.mode == InduceMode::directed) {
    // fraction of directed two-paths u->v->w (u != w) closed by the arc u->w
    long long open_triads = 0;
    long long closed = 0;
    for (int v = 0; v < sub.n; ++v) {
      for (int u = 0; u < sub.n; ++u) {
        if (u == v || !sub.has_edge(u, v)) continue;
        for (int w : sub.adj[std::size_t(v)]) {
          if (w == u) continue;
          ++open_triads;
          if (sub.has_edge(u, w)) ++closed;
        }
      }
    }
    if (open_triads == 0) return std::nullopt;
    return double(closed) / double(open_triads);
  }
  long long triples = 0;
  long long closed = 0;
  for (int v = 0; v < sub.n; ++v) {
    const auto& row = sub.adj[std::size_t(v)];
    const long long deg = (long long)(row.size());
    triples += deg * (deg - 1) / 2;
    for (std::size_t i = 0; i < row.size(); ++i) {
      for (std::size_t j = i + 1; j < row.size(); ++j) {
        if (sub.has_edge(row[i], row[j])) ++closed;  // triangle seen once per corner
      }
    }
  }
  if (triples == 0) return std::nullopt;
  return double(closed) / double(triples);
}

std::optional<double> avg_clustering(const InducedSubgraph& sub) {
  if (sub.mode == InduceMode::directed) return std::nullopt;
  if (sub.n == 0) return std::nullopt;
  double sum = 0.0;
  for (int v = 0; v < sub.n; ++v) {
    const auto& row = sub.adj[std::size_t(v)];
    const double deg = double(row.size());
    if (deg < 2) continue;  // fringe vertices count as 0
    long long links = 0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      for (std::size_t j = i + 1; j < row.size(); ++j) {
        if (sub.has_edge(row[i], row[j])) ++links;
      }
    }
    sum += 2.0 * double(links) / (deg * (deg - 1.0));
  }
  return sum / double(sub.n);
}

double avg_shortest_path(const InducedSubgraph& sub) {
  if (sub.mode == InduceMode::directed)
    throw std::invalid_argument("avg_shortest_path needs a symmetric subgraph");
  std::vector<int> component(std::size_t(sub.n), -1);
  double best = 0.0;
  for (int seed = 0; seed < sub.n; ++seed) {
    if (component[std::size_t(seed)] != -1) continue;
    std::vector<int> members;
    std::deque<int> queue{seed};
    component[std::size_t(seed)] = seed;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      members.push_back(v);
      for (int w : sub.adj[std::size_t(v)]) {
        if (component[std::size_t(w)] == -1) {
          component[std::size_t(w)] = seed;
          queue.push_back(w);
        }
      }
    }
    if (members.size() < 2) continue;
    long long total = 0;
    for (int src : members) {
      std::map<int, int> dist{{src, 0}};
      std::deque<int> bfs{src};
      while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop_front();
        for (int w : sub.adj[std::size_t(v)]) {
          if (!dist.count(w)) {
            dist[w] = dist[v] + 1;
            bfs.push_back(w);
          }
        }
      }
      for (const auto& [v, d] : dist) {
        (void)v;
        total += d;
      }
    }
    const double pairs = double(members.size()) * double(members.size() - 1);
    best = std::max(best, double(total) / pairs);
  }
  return best;
}

CohesionStats compute_cohesion(const InducedSubgraph& sub) {
  CohesionStats stats;
  stats.density = density(sub);
  stats.transitivity = transitivity(sub);
  if (sub.mode != InduceMode::directed) {
    stats.avg_clustering = avg_clustering(sub);
    stats.avg_shortest_path = avg_shortest_path(sub);
  }
  return stats;
}

GroupCohesion group_cohesion(const std::vector<UserId>& members, const FollowerIndex& followers) {
  GroupCohesion out;
  out.directed = compute_cohesion(induce(members, followers, InduceMode::directed));
  out.reciprocal = compute_cohesion(induce(members, followers, InduceMode::reciprocal));
  out.undirected = compute_cohesion(induce(members, followers, InduceMode::undirected));
  return out;
}

}  // namespace groupdyn
