#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "groupdyn/clustering.hpp"
#include "groupdyn/corpus.hpp"

namespace groupdyn {

// Undirected interaction graph: edge weight = number of retweet/reply/
// mention events between the pair over the whole corpus, both directions.
struct InteractionGraph {
  std::vector<UserId> vertex_ids;  // sorted; index = position
  std::map<UserId, int> index_of;
  WeightedGraph graph;
};

struct SocialGroup {
  int group_id = 0;
  std::vector<UserId> members;                  // sorted, static
  std::vector<std::vector<UserId>> snapshots;   // g_t per slice, sorted
  int active_slice_count = 0;                   // slices with |g_t| >= 1
};

InteractionGraph build_interaction_graph(const Corpus& corpus, bool weighted = true);

// g_t = members who authored at least one corpus post in slice t.
std::vector<UserId> snapshot(const std::vector<UserId>& members, const Corpus& corpus, int t);

// Wraps index clusters into SocialGroups with per-slice snapshots.
// Groups are ordered by smallest member id; ids assigned 0..G-1.
std::vector<SocialGroup> make_groups(const std::vector<std::vector<int>>& clusters,
                                     const InteractionGraph& graph, const Corpus& corpus);

std::vector<SocialGroup> filter_groups(std::vector<SocialGroup> groups, int min_size = 10,
                                       int min_active_slices = 5);

}  // namespace groupdyn
