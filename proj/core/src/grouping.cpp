#include "groupdyn/grouping.hpp"

#include <algorithm>

#include "groupdyn/log.hpp"

namespace groupdyn {

InteractionGraph build_interaction_graph(const Corpus& corpus, bool weighted) {
  InteractionGraph out;
  out.vertex_ids.assign(corpus.users.begin(), corpus.users.end());
  std::sort(out.vertex_ids.begin(), out.vertex_ids.end());
  for (std::size_t i = 0; i < out.vertex_ids.size(); ++i) {
    out.index_of.emplace(out.vertex_ids[i], int(i));
  }

  // accumulate pairwise interaction counts before touching the graph so
  // unweighted mode can clamp each pair to weight 1
  std::map<std::pair<int, int>, double> counts;
  auto record = [&](const UserId& a, const UserId& b) {
    if (a == b) return;
    const int ia = out.index_of.at(a);
    const int ib = out.index_of.at(b);
    counts[{std::min(ia, ib), std::max(ia, ib)}] += 1.0;
  };
  for (const auto& post : corpus.posts) {
    if (post.retweet_of) record(post.author, *post.retweet_of);
    if (post.reply_to) record(post.author, *post.reply_to);
    for (const auto& m : post.mentions) record(post.author, m);
  }

  out.graph = WeightedGraph(int(out.vertex_ids.size()));
  for (const auto& [pair, count] : counts) {
    out.graph.add_edge(pair.first, pair.second, weighted ? count : 1.0);
  }
  return out;
}

std::vector<UserId> snapshot(const std::vector<UserId>& members, const Corpus& corpus, int t) {
  std::set<UserId> member_set(members.begin(), members.end());
  std::set<UserId> active;
  for (const auto& post : corpus.posts) {
    if (corpus.slice_of(post.timestamp) != t) continue;
    if (member_set.count(post.author)) active.insert(post.author);
  }
  return {active.begin(), active.end()};
}

std::vector<SocialGroup> make_groups(const std::vector<std::vector<int>>& clusters,
                                     const InteractionGraph& graph, const Corpus& corpus) {
  // per-user posting slices, computed once
  std::map<UserId, std::set<int>> posted_in;
  for (const auto& post : corpus.posts) {
    posted_in[post.author].insert(corpus.slice_of(post.timestamp));
  }

  std::vector<SocialGroup> groups;
  groups.reserve(clusters.size());
  for (const auto& cluster : clusters) {
    SocialGroup g;
    g.members.reserve(cluster.size());
    for (int idx : cluster) g.members.push_back(graph.vertex_ids[std::size_t(idx)]);
    std::sort(g.members.begin(), g.members.end());
    g.snapshots.assign(std::size_t(corpus.slice_count), {});
    for (const auto& member : g.members) {
      auto it = posted_in.find(member);
      if (it == posted_in.end()) continue;
      for (int t : it->second) g.snapshots[std::size_t(t)].push_back(member);
    }
    for (auto& snap : g.snapshots) {
      std::sort(snap.begin(), snap.end());
      if (!snap.empty()) ++g.active_slice_count;
    }
    groups.push_back(std::move(g));
  }
  std::sort(groups.begin(), groups.end(), [](const SocialGroup& a, const SocialGroup& b) {
    return a.members.front() < b.members.front();
  });
  for (std::size_t i = 0; i < groups.size(); ++i) groups[i].group_id = int(i);
  return groups;
}

std::vector<SocialGroup> filter_groups(std::vector<SocialGroup> groups, int min_size,
                                       int min_active_slices) {
  const std::size_t before = groups.size();
  groups.erase(std::remove_if(groups.begin(), groups.end(),
                              [&](const SocialGroup& g) {
                                return int(g.members.size()) < min_size ||
                                       g.active_slice_count < min_active_slices;
                              }),
               groups.end());
  for (std::size_t i = 0; i < groups.size(); ++i) groups[i].group_id = int(i);
  log_info("filtered groups: " + std::to_string(groups.size()) + " of " +
           std::to_string(before) + " kept (min size " + std::to_string(min_size) +
           ", min active slices " + std::to_string(min_active_slices) + ")");
  return groups;
}

}  // namespace groupdyn
