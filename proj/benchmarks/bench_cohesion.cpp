#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "groupdyn/cohesion.hpp"

namespace {

using groupdyn::FollowerEdge;
using groupdyn::FollowerIndex;
using groupdyn::InducedSubgraph;
using groupdyn::InduceMode;
using groupdyn::UserId;

std::vector<UserId> make_members(int n) {
  std::vector<UserId> members;
  members.reserve(std::size_t(n));
  for (int i = 0; i < n; ++i) members.push_back("u" + std::to_string(i));
  return members;
}

FollowerIndex random_followers(const std::vector<UserId>& users, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution arc(p);
  std::vector<FollowerEdge> edges;
  for (const auto& u : users) {
    for (const auto& v : users) {
      if (u != v && arc(rng)) edges.push_back({u, v});
    }
  }
  return FollowerIndex::build(edges);
}

void BM_Induce(benchmark::State& state) {
  const int n = int(state.range(0));
  const auto members = make_members(n);
  const auto followers = random_followers(members, 0.05, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(groupdyn::induce(members, followers, InduceMode::undirected));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Induce)->Arg(64)->Arg(256);

void BM_AvgShortestPath(benchmark::State& state) {
  const int n = int(state.range(0));
  const auto members = make_members(n);
  const auto followers = random_followers(members, 0.05, 7);
  const InducedSubgraph sub = groupdyn::induce(members, followers, InduceMode::undirected);
  for (auto _ : state) {
    benchmark::DoNotOptimize(groupdyn::avg_shortest_path(sub));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_AvgShortestPath)->Arg(64)->Arg(256);

// Full per-group feature row: all three induced views plus their statistics.
void BM_GroupCohesion(benchmark::State& state) {
  const int n = int(state.range(0));
  const auto members = make_members(n);
  const auto followers = random_followers(members, 0.05, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(groupdyn::group_cohesion(members, followers));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_GroupCohesion)->Arg(16)->Arg(64)->Arg(256);

}  // namespace
