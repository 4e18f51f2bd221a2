#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "groupdyn/clustering.hpp"

using namespace groupdyn;

namespace {

std::set<std::set<int>> as_sets(const std::vector<std::vector<int>>& clusters) {
  std::set<std::set<int>> out;
  for (auto& c : clusters) out.insert(std::set<int>(c.begin(), c.end()));
  return out;
}

// fraction of vertex pairs on which two partitions agree
double rand_index(const std::vector<std::vector<int>>& got,
                  const std::vector<std::vector<int>>& want, int n) {
  std::vector<int> ga(std::size_t(n), -1), wa(std::size_t(n), -1);
  for (std::size_t c = 0; c < got.size(); ++c)
    for (int v : got[c]) ga[std::size_t(v)] = int(c);
  for (std::size_t c = 0; c < want.size(); ++c)
    for (int v : want[c]) wa[std::size_t(v)] = int(c);
  double agree = 0, total = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      total += 1;
      bool same_got = ga[std::size_t(u)] == ga[std::size_t(v)];
      bool same_want = wa[std::size_t(u)] == wa[std::size_t(v)];
      if (same_got == same_want) agree += 1;
    }
  return agree / total;
}

WeightedGraph two_cliques(int size, bool bridged) {
  WeightedGraph g(2 * size);
  for (int block = 0; block < 2; ++block)
    for (int u = 0; u < size; ++u)
      for (int v = u + 1; v < size; ++v)
        g.add_edge(block * size + u, block * size + v, 1.0);
  if (bridged) g.add_edge(0, size, 1.0);
  return g;
}

}  // namespace

TEST_CASE("graph builder accumulates parallel edges and drops self-loops") {
  WeightedGraph g(3);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 0, 2.0);
  g.add_edge(1, 1, 5.0);
  g.add_edge(1, 2, 1.0);
  CHECK(g.edge_count() == 2);
  CHECK(g.total_weight() == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("two disjoint cliques are recovered exactly at any target") {
  auto g = two_cliques(20, false);
  std::set<std::set<int>> expected;
  std::set<int> a, b;
  for (int v = 0; v < 20; ++v) a.insert(v), b.insert(v + 20);
  expected.insert(a);
  expected.insert(b);

  for (double target : {5.0, 20.0, 100.0}) {
    ClusterParams params;
    params.target_avg_size = target;
    auto clusters = cluster(g, params);
    CHECK(as_sets(clusters) == expected);
  }
}

TEST_CASE("bridged cliques split at a matching target size") {
  auto g = two_cliques(20, true);
  ClusterParams params;
  params.target_avg_size = 20.0;
  auto clusters = cluster(g, params);
  REQUIRE(clusters.size() == 2);
  std::set<std::set<int>> expected;
  std::set<int> a, b;
  for (int v = 0; v < 20; ++v) a.insert(v), b.insert(v + 20);
  expected.insert(a);
  expected.insert(b);
  CHECK(as_sets(clusters) == expected);
}

TEST_CASE("zero-edge graphs fall apart into singletons") {
  WeightedGraph g(5);
  ClusterParams params;
  auto clusters = cluster(g, params);
  REQUIRE(clusters.size() == 5);
  std::set<int> seen;
  for (auto& c : clusters) {
    REQUIRE(c.size() == 1);
    seen.insert(c[0]);
  }
  CHECK(seen == std::set<int>{0, 1, 2, 3, 4});
}

TEST_CASE("isolated vertices stay out of edge-bearing clusterings") {
  WeightedGraph g(5);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 1.0);
  ClusterParams params;
  params.target_avg_size = 3.0;
  auto clusters = cluster(g, params);
  std::set<int> covered;
  for (auto& c : clusters)
    for (int v : c) covered.insert(v);
  CHECK(covered == std::set<int>{0, 1, 2});
}

TEST_CASE("invalid targets are rejected") {
  WeightedGraph g(3);
  g.add_edge(0, 1, 1.0);
  ClusterParams params;
  params.target_avg_size = 0.0;
  CHECK_THROWS_AS((void)cluster(g, params), std::invalid_argument);
  params.target_avg_size = -4.0;
  CHECK_THROWS_AS((void)cluster(g, params), std::invalid_argument);
}

TEST_CASE("same seed gives identical partitions") {
  std::mt19937_64 rng(99);
  WeightedGraph g(60);
  for (int u = 0; u < 60; ++u)
    for (int v = u + 1; v < 60; ++v)
      if (rng() % 10 == 0) g.add_edge(u, v, 1.0 + double(rng() % 5));
  ClusterParams params;
  params.target_avg_size = 15.0;
  params.seed = 7;
  auto first = cluster(g, params);
  auto second = cluster(g, params);
  CHECK(first == second);
}

TEST_CASE("partitions are invariant under vertex relabeling") {
  std::mt19937_64 rng(5);
  const int size = 12;
  auto g = two_cliques(size, true);

  std::vector<int> perm(std::size_t(2 * size));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  WeightedGraph h(2 * size);
  for (int u = 0; u < g.n; ++u)
    for (auto [v, w] : g.adj[std::size_t(u)])
      if (u < v) h.add_edge(perm[std::size_t(u)], perm[std::size_t(v)], w);

  ClusterParams params;
  params.target_avg_size = double(size);
  auto orig = cluster(g, params);
  auto relabeled = cluster(h, params);

  // map the relabeled result back through the permutation
  std::vector<int> inverse(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inverse[std::size_t(perm[i])] = int(i);
  std::vector<std::vector<int>> mapped;
  for (auto& c : relabeled) {
    std::vector<int> back;
    for (int v : c) back.push_back(inverse[std::size_t(v)]);
    std::sort(back.begin(), back.end());
    mapped.push_back(back);
  }
  CHECK(as_sets(mapped) == as_sets(orig));
}

TEST_CASE("planted blocks are recovered with high pair agreement") {
  // 4 blocks of 30, in-block edge prob 0.3, cross prob 0.005
  std::mt19937_64 rng(11);
  const int blocks = 4, size = 30, n = blocks * size;
  WeightedGraph g(n);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      bool same = (u / size) == (v / size);
      if (coin(rng) < (same ? 0.3 : 0.005)) g.add_edge(u, v, 1.0);
    }
  std::vector<std::vector<int>> planted(blocks);
  for (int v = 0; v < n; ++v) planted[std::size_t(v / size)].push_back(v);

  ClusterParams params;
  params.target_avg_size = double(size);
  auto clusters = cluster(g, params);
  CHECK(rand_index(clusters, planted, n) >= 0.9);

  double mean = 0;
  for (auto& c : clusters) mean += double(c.size());
  mean /= double(clusters.size());
  CHECK(mean >= 0.5 * size);
  CHECK(mean <= 2.0 * size);
}

TEST_CASE("fixed granularity runs are deterministic and cover non-isolated vertices") {
  auto g = two_cliques(8, true);
  auto a = cluster_at_granularity(g, 1.0, 3);
  auto b = cluster_at_granularity(g, 1.0, 3);
  CHECK(a == b);
  std::set<int> covered;
  for (auto& c : a)
    for (int v : c) covered.insert(v);
  CHECK(covered.size() == 16);
}
