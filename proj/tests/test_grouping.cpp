#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "groupdyn/grouping.hpp"

using namespace groupdyn;

namespace {

InteractionRecord post(const char* id, const char* user, std::int64_t ts) {
  InteractionRecord r;
  r.post_id = id;
  r.author = user;
  r.timestamp = ts;
  return r;
}

// hand-built corpus: a<->b interact heavily, c mentions d once, e is silent
Corpus tiny_corpus() {
  Corpus c;
  c.slice_config.width_seconds = 86400;
  c.start_midnight = 0;
  c.slice_count = 3;

  auto p1 = post("p1", "a", 100);
  p1.retweet_of = "b";
  auto p2 = post("p2", "b", 200);
  p2.reply_to = "a";
  auto p3 = post("p3", "a", 86400 + 100);
  p3.mentions = {"b", "b"};
  auto p4 = post("p4", "c", 2 * 86400 + 100);
  p4.mentions = {"d"};
  auto p5 = post("p5", "d", 2 * 86400 + 200);
  c.posts = {p1, p2, p3, p4, p5};

  for (const char* u : {"a", "b", "c", "d", "e"}) c.users.insert(u);
  return c;
}

}  // namespace

TEST_CASE("interaction graph sums events per pair across directions") {
  Corpus c = tiny_corpus();
  auto ig = build_interaction_graph(c, true);

  REQUIRE(ig.vertex_ids == std::vector<UserId>{"a", "b", "c", "d", "e"});
  CHECK(ig.graph.n == 5);
  CHECK(ig.graph.edge_count() == 2);
  // a-b: retweet + reply + two mentions = 4 events
  int a = ig.index_of.at("a"), b = ig.index_of.at("b");
  double w_ab = 0;
  for (auto [v, w] : ig.graph.adj[std::size_t(a)])
    if (v == b) w_ab = w;
  CHECK(w_ab == 4.0);
  CHECK(ig.graph.total_weight() == 5.0);

  auto flat = build_interaction_graph(c, false);
  CHECK(flat.graph.total_weight() == 2.0);
}

TEST_CASE("self-interactions never create edges") {
  Corpus c = tiny_corpus();
  auto self_rt = post("p6", "a", 300);
  self_rt.retweet_of = "a";
  c.posts.push_back(self_rt);
  auto ig = build_interaction_graph(c, true);
  CHECK(ig.graph.edge_count() == 2);
}

TEST_CASE("snapshots pick the members who posted in the slice") {
  Corpus c = tiny_corpus();
  std::vector<UserId> members = {"a", "b", "e"};
  CHECK(snapshot(members, c, 0) == std::vector<UserId>{"a", "b"});
  CHECK(snapshot(members, c, 1) == std::vector<UserId>{"a"});
  CHECK(snapshot(members, c, 2).empty());
  // non-members are ignored even when active
  std::vector<UserId> only_c = {"c"};
  CHECK(snapshot(only_c, c, 2) == std::vector<UserId>{"c"});
  CHECK(snapshot(only_c, c, 0).empty());
}

TEST_CASE("groups wrap clusters with ordered ids and per-slice activity") {
  Corpus c = tiny_corpus();
  auto ig = build_interaction_graph(c, true);
  // cluster indices: {c,d} first, {a,b} second; ordering by smallest member flips them
  int ia = ig.index_of.at("a"), ib = ig.index_of.at("b");
  int ic = ig.index_of.at("c"), id = ig.index_of.at("d");
  auto groups = make_groups({{id, ic}, {ib, ia}}, ig, c);

  REQUIRE(groups.size() == 2);
  CHECK(groups[0].group_id == 0);
  CHECK(groups[0].members == std::vector<UserId>{"a", "b"});
  CHECK(groups[1].group_id == 1);
  CHECK(groups[1].members == std::vector<UserId>{"c", "d"});

  REQUIRE(groups[0].snapshots.size() == 3);
  CHECK(groups[0].snapshots[0] == std::vector<UserId>{"a", "b"});
  CHECK(groups[0].snapshots[1] == std::vector<UserId>{"a"});
  CHECK(groups[0].snapshots[2].empty());
  CHECK(groups[0].active_slice_count == 2);
  CHECK(groups[1].snapshots[2] == std::vector<UserId>{"c", "d"});
  CHECK(groups[1].active_slice_count == 1);
}

TEST_CASE("filtering drops small or rarely active groups and renumbers") {
  Corpus c = tiny_corpus();
  auto ig = build_interaction_graph(c, true);
  int ia = ig.index_of.at("a"), ib = ig.index_of.at("b");
  int ic = ig.index_of.at("c"), id = ig.index_of.at("d");
  auto groups = make_groups({{ia, ib}, {ic, id}}, ig, c);

  auto kept_all = filter_groups(groups, 2, 1);
  REQUIRE(kept_all.size() == 2);
  CHECK(kept_all[0].group_id == 0);
  CHECK(kept_all[1].group_id == 1);

  auto active_twice = filter_groups(groups, 2, 2);
  REQUIRE(active_twice.size() == 1);
  CHECK(active_twice[0].members == std::vector<UserId>{"a", "b"});
  CHECK(active_twice[0].group_id == 0);

  auto big_only = filter_groups(groups, 3, 1);
  CHECK(big_only.empty());
}
