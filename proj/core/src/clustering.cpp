#include "groupdyn/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "groupdyn/log.hpp"

namespace groupdyn {

void WeightedGraph::add_edge(int u, int v, double w) {
  if (u < 0 || v < 0 || u >= n || v >= n) throw std::out_of_range("vertex index out of range");
  if (u == v) return;
  auto bump = [w](std::vector<std::pair<int, double>>& row, int other) {
    for (auto& entry : row) {
      if (entry.first == other) {
        entry.second += w;
        return;
      }
    }
    row.emplace_back(other, w);
  };
  bump(adj[u], v);
  bump(adj[v], u);
}

std::size_t WeightedGraph::edge_count() const {
  std::size_t half_edges = 0;
  for (const auto& row : adj) half_edges += row.size();
  return half_edges / 2;
}

double WeightedGraph::total_weight() const {
  double sum = 0.0;
  for (const auto& row : adj) {
    for (const auto& [v, w] : row) sum += w;
  }
  return sum / 2.0;
}

namespace {

// Working representation for the multilevel scheme. Coarse vertices carry
// self-loop weight from collapsed internal edges; modularity needs it.
struct MlGraph {
  int n = 0;
  std::vector<std::vector<std::pair<int, double>>> adj;  // no self-loops, rows sorted
  std::vector<double> self_loop;
  std::vector<double> strength;  // incident weight + 2 * self_loop
  double total = 0.0;            // sum of edge weights + self-loop weights

  void finish() {
    strength.assign(std::size_t(n), 0.0);
    total = 0.0;
    for (int u = 0; u < n; ++u) {
      std::sort(adj[std::size_t(u)].begin(), adj[std::size_t(u)].end());
      double s = 0.0;
      for (const auto& [v, w] : adj[std::size_t(u)]) s += w;
      strength[std::size_t(u)] = s + 2.0 * self_loop[std::size_t(u)];
      total += s;
    }
    total /= 2.0;
    for (double w : self_loop) total += w;
  }
};

// Louvain-style local moving maximizing modularity at the given granularity
// (resolution). Ties keep the current community; a vertex may also step out
// into an empty community when every neighbor community has negative gain.
std::vector<int> local_moving(const MlGraph& g, double granularity, std::mt19937_64& rng,
                              std::vector<int> comm) {
  const double m = g.total;
  if (m <= 0.0) return comm;
  const double eps = 1e-12;

  std::vector<double> sigma_tot(std::size_t(g.n), 0.0);
  std::vector<int> comm_size(std::size_t(g.n), 0);
  for (int u = 0; u < g.n; ++u) {
    sigma_tot[std::size_t(comm[std::size_t(u)])] += g.strength[std::size_t(u)];
    comm_size[std::size_t(comm[std::size_t(u)])] += 1;
  }
  std::vector<int> empty_ids;
  for (int c = 0; c < g.n; ++c) {
    if (comm_size[std::size_t(c)] == 0) empty_ids.push_back(c);
  }

  std::vector<int> order(std::size_t(g.n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<double> weight_to(std::size_t(g.n), 0.0);
  std::vector<int> touched;

  bool improved = true;
  int pass = 0;
  while (improved && pass < 64) {
    improved = false;
    ++pass;
    for (int u : order) {
      const int a = comm[std::size_t(u)];
      const double ku = g.strength[std::size_t(u)];
      touched.clear();
      for (const auto& [v, w] : g.adj[std::size_t(u)]) {
        const int c = comm[std::size_t(v)];
        if (weight_to[std::size_t(c)] == 0.0) touched.push_back(c);
        weight_to[std::size_t(c)] += w;
      }
      sigma_tot[std::size_t(a)] -= ku;
      comm_size[std::size_t(a)] -= 1;

      auto gain = [&](int c) {
        return weight_to[std::size_t(c)] / m -
               granularity * sigma_tot[std::size_t(c)] * ku / (2.0 * m * m);
      };
      double best_gain = gain(a);
      int best_c = a;
      std::sort(touched.begin(), touched.end());
      for (int c : touched) {
        if (c == a) continue;
        const double gc = gain(c);
        if (gc > best_gain + eps) {
          best_gain = gc;
          best_c = c;
        }
      }
      if (best_gain < -eps) {
        if (comm_size[std::size_t(a)] == 0) {
          best_c = a;
        } else {
          best_c = empty_ids.back();
          empty_ids.pop_back();
        }
      }
      if (best_c != a && comm_size[std::size_t(a)] == 0) empty_ids.push_back(a);
      comm[std::size_t(u)] = best_c;
      sigma_tot[std::size_t(best_c)] += ku;
      comm_size[std::size_t(best_c)] += 1;
      if (best_c != a) improved = true;
      for (int c : touched) weight_to[std::size_t(c)] = 0.0;
    }
  }
  return comm;
}

struct CoarseLevel {
  MlGraph graph;
  std::vector<int> vertex_map;  // fine vertex -> coarse vertex
};

// Heavy-edge matching: unmatched vertices pair with their heaviest unmatched
// neighbor (ties to the smallest index), visited in shuffled order.
CoarseLevel coarsen(const MlGraph& g, std::mt19937_64& rng) {
  std::vector<int> order(std::size_t(g.n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<int> mate(std::size_t(g.n), -1);
  for (int u : order) {
    if (mate[std::size_t(u)] != -1) continue;
    int best = -1;
    double best_w = 0.0;
    for (const auto& [v, w] : g.adj[std::size_t(u)]) {
      if (mate[std::size_t(v)] != -1) continue;
      if (w > best_w) {
        best_w = w;
        best = v;
      }
    }
    if (best != -1) {
      mate[std::size_t(u)] = best;
      mate[std::size_t(best)] = u;
    }
  }

  std::vector<int> vmap(std::size_t(g.n), -1);
  int coarse_n = 0;
  for (int u = 0; u < g.n; ++u) {
    if (vmap[std::size_t(u)] != -1) continue;
    vmap[std::size_t(u)] = coarse_n;
    if (mate[std::size_t(u)] != -1) vmap[std::size_t(mate[std::size_t(u)])] = coarse_n;
    ++coarse_n;
  }

  MlGraph cg;
  cg.n = coarse_n;
  cg.adj.assign(std::size_t(coarse_n), {});
  cg.self_loop.assign(std::size_t(coarse_n), 0.0);
  auto acc = std::vector<std::map<int, double>>(std::size_t(coarse_n));
  for (int u = 0; u < g.n; ++u) {
    cg.self_loop[std::size_t(vmap[std::size_t(u)])] += g.self_loop[std::size_t(u)];
    for (const auto& [v, w] : g.adj[std::size_t(u)]) {
      if (v < u) continue;
      const int cu = vmap[std::size_t(u)];
      const int cv = vmap[std::size_t(v)];
      if (cu == cv) {
        cg.self_loop[std::size_t(cu)] += w;
      } else {
        acc[std::size_t(std::min(cu, cv))][std::max(cu, cv)] += w;
      }
    }
  }
  for (int cu = 0; cu < coarse_n; ++cu) {
    for (const auto& [cv, w] : acc[std::size_t(cu)]) {
      cg.adj[std::size_t(cu)].emplace_back(cv, w);
      cg.adj[std::size_t(cv)].emplace_back(cu, w);
    }
  }
  cg.finish();
  return {std::move(cg), std::move(vmap)};
}

std::vector<int> multilevel_partition(const MlGraph& base, double granularity,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<MlGraph> levels;
  levels.push_back(base);
  std::vector<std::vector<int>> maps;
  while (levels.back().n > 32 && levels.size() < 64) {
    CoarseLevel next = coarsen(levels.back(), rng);
    if (next.graph.n >= levels.back().n) break;  // matching made no progress
    maps.push_back(std::move(next.vertex_map));
    levels.push_back(std::move(next.graph));
  }

  std::vector<int> comm(std::size_t(levels.back().n));
  std::iota(comm.begin(), comm.end(), 0);
  comm = local_moving(levels.back(), granularity, rng, std::move(comm));

  for (int li = int(levels.size()) - 2; li >= 0; --li) {
    const std::vector<int>& vmap = maps[std::size_t(li)];
    std::vector<int> fine(std::size_t(levels[std::size_t(li)].n));
    for (int u = 0; u < levels[std::size_t(li)].n; ++u) {
      fine[std::size_t(u)] = comm[std::size_t(vmap[std::size_t(u)])];
    }
    comm = local_moving(levels[std::size_t(li)], granularity, rng, std::move(fine));
  }
  return comm;
}

std::vector<std::vector<int>> singleton_clusters(int n) {
  auto out = std::vector<std::vector<int>>(std::size_t(n));
  for (int u = 0; u < n; ++u) out[std::size_t(u)] = {u};
  return out;
}

std::vector<std::vector<int>> collect_clusters(const std::vector<int>& comm,
                                               const std::vector<int>& original_ids) {
  std::map<int, std::vector<int>> by_comm;
  for (std::size_t u = 0; u < comm.size(); ++u) {
    by_comm[comm[u]].push_back(original_ids[u]);
  }
  std::vector<std::vector<int>> out;
  out.reserve(by_comm.size());
  for (auto& [c, members] : by_comm) {
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

}  // namespace

std::vector<std::vector<int>> cluster_at_granularity(const WeightedGraph& graph,
                                                     double granularity, std::uint64_t seed) {
  if (graph.n == 0) return {};
  if (graph.edge_count() == 0) return singleton_clusters(graph.n);

  std::vector<int> original_ids;
  std::vector<int> compact(std::size_t(graph.n), -1);
  for (int u = 0; u < graph.n; ++u) {
    if (!graph.adj[std::size_t(u)].empty()) {
      compact[std::size_t(u)] = int(original_ids.size());
      original_ids.push_back(u);
    }
  }
  MlGraph base;
  base.n = int(original_ids.size());
  base.adj.assign(std::size_t(base.n), {});
  base.self_loop.assign(std::size_t(base.n), 0.0);
  for (int u = 0; u < graph.n; ++u) {
    if (compact[std::size_t(u)] == -1) continue;
    for (const auto& [v, w] : graph.adj[std::size_t(u)]) {
      base.adj[std::size_t(compact[std::size_t(u)])].emplace_back(compact[std::size_t(v)], w);
    }
  }
  base.finish();

  std::vector<int> comm = multilevel_partition(base, granularity, seed);
  return collect_clusters(comm, original_ids);
}

std::vector<std::vector<int>> cluster(const WeightedGraph& graph, const ClusterParams& params) {
  if (params.target_avg_size <= 0.0) throw std::invalid_argument("target_avg_size must be positive");
  if (graph.n == 0) return {};
  if (graph.edge_count() == 0) return singleton_clusters(graph.n);

  int clustered_vertices = 0;
  for (int u = 0; u < graph.n; ++u) {
    if (!graph.adj[std::size_t(u)].empty()) ++clustered_vertices;
  }

  const double lo_size = 0.5 * params.target_avg_size;
  const double hi_size = 2.0 * params.target_avg_size;
  auto mean_size = [&](const std::vector<std::vector<int>>& clusters) {
    return double(clustered_vertices) / double(clusters.size());
  };

  std::vector<std::vector<int>> best;
  double best_dist = std::numeric_limits<double>::infinity();
  int rounds = 0;
  auto evaluate = [&](double granularity) {
    ++rounds;
    std::vector<std::vector<int>> clusters =
        cluster_at_granularity(graph, granularity, params.seed);
    const double mean = mean_size(clusters);
    const double dist = std::abs(std::log(mean / params.target_avg_size));
    log_debug("clustering round " + std::to_string(rounds) + ": granularity " +
              std::to_string(granularity) + " -> " + std::to_string(clusters.size()) +
              " clusters, mean size " + std::to_string(mean));
    if (dist < best_dist) {
      best_dist = dist;
      best = clusters;
    }
    return std::make_pair(std::move(clusters), mean);
  };

  auto [first, mean] = evaluate(1.0);
  if (mean >= lo_size && mean <= hi_size) return first;

  // A larger granularity splits clusters finer; a smaller one merges them.
  // Bracket the target by stepping geometrically, then bisect in log space.
  double lo_gran = -1.0;  // produces clusters too big
  double hi_gran = -1.0;  // produces clusters too small
  double step = mean > hi_size ? 2.0 : 0.5;
  if (mean > hi_size) {
    lo_gran = 1.0;
  } else {
    hi_gran = 1.0;
  }
  double gran = step;
  while (rounds < params.max_tuning_rounds && (lo_gran < 0.0 || hi_gran < 0.0) &&
         gran > 1e-9 && gran < 1e9) {
    auto [clusters, m] = evaluate(gran);
    if (m >= lo_size && m <= hi_size) return clusters;
    if (m > hi_size) {
      lo_gran = gran;
    } else {
      hi_gran = gran;
    }
    if ((step > 1.0 && m < lo_size) || (step < 1.0 && m > hi_size)) break;  // bracketed
    gran *= step;
  }
  while (rounds < params.max_tuning_rounds && lo_gran > 0.0 && hi_gran > 0.0) {
    const double mid = std::sqrt(lo_gran * hi_gran);
    if (mid <= lo_gran * 1.0000001 || mid >= hi_gran * 0.9999999) break;
    auto [clusters, m] = evaluate(mid);
    if (m >= lo_size && m <= hi_size) return clusters;
    if (m > hi_size) {
      lo_gran = mid;
    } else {
      hi_gran = mid;
    }
  }
  log_warn("cluster size tuning hit the round cap; keeping closest run (mean size off target)");
  return best;
}

}  // namespace groupdyn
