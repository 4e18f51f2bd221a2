// End-to-end acceptance gate: every check prints one PASS/FAIL line and the
// process exits with the number of failed checks. Tolerances are part of the
// contract, not implementation slack; see README.md.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cohesion_oracle.hpp"
#include "groupdyn/cohesion.hpp"
#include "groupdyn/clustering.hpp"
#include "groupdyn/identity.hpp"
#include "groupdyn/inference.hpp"
#include "groupdyn/pipeline.hpp"
#include "groupdyn/sustainability.hpp"
#include "groupdyn/synth.hpp"
#include "groupdyn/topics.hpp"
#include "temp_dir.hpp"

using namespace groupdyn;
namespace fs = std::filesystem;

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

std::vector<std::string> failures;

void expect(bool ok, const std::string& what) {
  if (!ok) failures.push_back(what);
}

// ---- 1: exact binomial tail ------------------------------------------------

bool check_binomial() {
  auto t0 = clock_type::now();
  double p9 = binomial_one_sided(20, 9);
  double p11 = binomial_one_sided(20, 11);
  double elapsed = ms_since(t0);
  expect(std::fabs(p9 - 0.7483) <= 5e-5, "binomial(20,9) off: " + std::to_string(p9));
  expect(std::fabs(p11 - 0.4119) <= 5e-5, "binomial(20,11) off: " + std::to_string(p11));
  expect(elapsed < 1.0, "binomial pair took " + std::to_string(elapsed) + " ms");
  return failures.empty();
}

// ---- 2: cohesion statistics vs matrix oracles -------------------------------

bool optional_close(std::optional<double> got, std::optional<double> want, double tol) {
  if (got.has_value() != want.has_value()) return false;
  if (!got) return true;
  return std::fabs(*got - *want) <= tol;
}

bool check_cohesion_oracles() {
  auto t0 = clock_type::now();
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 2 + int(rng() % 29);  // up to 30 vertices
    double p = 0.1 + 0.4 * coin(rng);
    std::vector<UserId> members;
    for (int i = 0; i < n; ++i) members.push_back("m" + std::to_string(i));
    std::vector<FollowerEdge> edges;
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v && coin(rng) < p)
          edges.push_back({members[std::size_t(u)], members[std::size_t(v)]});
    auto idx = FollowerIndex::build(edges);

    auto dir = induce(members, idx, InduceMode::directed);
    auto rec = induce(members, idx, InduceMode::reciprocal);
    auto und = induce(members, idx, InduceMode::undirected);
    testutil::MatrixOracle odir(dir), orec(rec), ound(und);

    bool ok = optional_close(density(dir), odir.density(true), 1e-9) &&
              optional_close(density(rec), orec.density(false), 1e-9) &&
              optional_close(density(und), ound.density(false), 1e-9) &&
              optional_close(transitivity(dir), odir.transitivity(true), 1e-9) &&
              optional_close(transitivity(rec), orec.transitivity(false), 1e-9) &&
              optional_close(transitivity(und), ound.transitivity(false), 1e-9) &&
              optional_close(avg_clustering(rec), orec.avg_clustering(), 1e-9) &&
              optional_close(avg_clustering(und), ound.avg_clustering(), 1e-9) &&
              std::fabs(avg_shortest_path(rec) - orec.avg_shortest_path()) <= 1e-9 &&
              std::fabs(avg_shortest_path(und) - ound.avg_shortest_path()) <= 1e-9;
    expect(ok, "statistic mismatch on trial " + std::to_string(trial));

    double dd = density(dir).value(), dr = density(rec).value(), du = density(und).value();
    expect(dr <= dd + 1e-12 && dd <= du + 1e-12,
           "density ordering violated on trial " + std::to_string(trial));
    if (!failures.empty()) return false;
  }
  double elapsed = ms_since(t0);
  expect(elapsed < 30000.0, "oracle sweep took " + std::to_string(elapsed) + " ms");
  return failures.empty();
}

// ---- 3: entropy bounds ------------------------------------------------------

bool check_entropy_bounds() {
  std::mt19937_64 rng(99);
  struct TypeSpec {
    const char* name;
    int classes;
  };
  for (TypeSpec ts : {TypeSpec{"regional", 12}, TypeSpec{"expertise", kExpertiseClassCount},
                      TypeSpec{"activity-split", kAidClassCount}}) {
    for (int trial = 0; trial < 200; ++trial) {
      std::map<std::string, std::int64_t> counts;
      int used = 1 + int(rng() % ts.classes);
      for (int c = 0; c < used; ++c)
        counts["c" + std::to_string(c)] = std::int64_t(rng() % 50);
      auto h = class_entropy(counts);
      if (!h) continue;  // all-zero draw
      double cap = std::log(double(ts.classes));
      expect(*h >= 0.0 && *h <= cap + 1e-12,
             std::string(ts.name) + " entropy outside [0, ln C]: " + std::to_string(*h));
    }
    std::map<std::string, std::int64_t> uniform;
    for (int c = 0; c < ts.classes; ++c) uniform["c" + std::to_string(c)] = 5;
    auto h = class_entropy(uniform);
    expect(h.has_value() && std::fabs(*h - std::log(double(ts.classes))) <= 1e-9,
           std::string(ts.name) + " uniform entropy misses ln C");
  }
  return failures.empty();
}

// ---- 4: group topic mean and divergence -------------------------------------

bool check_topic_measures() {
  BetaTable beta;
  beta.topic_count = 3;
  beta.rows[{"u1", 0}] = {0.6, 0.2, 0.2};
  beta.rows[{"u2", 0}] = {0.2, 0.6, 0.2};
  beta.rows[{"u3", 0}] = {0.1, 0.1, 0.8};

  // the averaging oracle, accumulated in member order like the implementation
  std::vector<UserId> members = {"u1", "u2", "u3"};
  std::vector<double> oracle(3, 0.0);
  for (const auto& u : members) {
    const auto* row = beta.find(u, 0);
    for (std::size_t i = 0; i < 3; ++i) oracle[i] += (*row)[i];
  }
  for (double& v : oracle) v /= 3.0;
  auto mean = group_distribution(members, beta, 0);
  expect(mean.has_value() && *mean == oracle, "group distribution differs from averaging oracle");

  std::vector<std::vector<double>> same = {{0.3, 0.3, 0.4}, {0.3, 0.3, 0.4}};
  expect(topic_divergence(same, 1e-6) == 0.0, "identical members should give zero divergence");

  std::vector<std::vector<double>> pair = {{0.6, 0.2, 0.2}, {0.2, 0.6, 0.2}};
  double td = topic_divergence(pair, 1e-6);
  expect(std::fabs(td - 0.1151) <= 1e-3, "two-member divergence off: " + std::to_string(td));
  return failures.empty();
}

// ---- 5: stability and growth ------------------------------------------------

bool check_stability_growth() {
  std::vector<UserId> prev = {"a", "b", "c", "d", "e"};
  std::vector<UserId> curr = {"a", "f", "g", "h", "i", "j", "k", "l", "m", "n"};
  auto ms = membership_stability(prev, curr);
  auto gr = growth_rate(prev, curr);
  expect(ms.has_value() && *ms == 10.0 / 14.0, "stability should be exactly 10/14");
  expect(gr.has_value() && *gr == 2.0, "growth should be exactly 2");

  SocialGroup g;
  g.members = {"a", "b", "c"};
  g.snapshots = {{"a", "b", "c"}, {"a", "b", "c"}, {"a", "b", "c"}, {"a", "b", "c"}};
  g.active_slice_count = 4;
  BetaTable beta;
  beta.topic_count = 2;
  auto series = build_series(g, beta, 1e-6);
  expect(series.mean_gr.has_value() && *series.mean_gr == 1.0,
         "constant snapshots should give unit mean growth");
  return failures.empty();
}

// ---- 6: planted structure recovered end to end -------------------------------

std::map<std::pair<std::string, std::string>, std::optional<double>> read_correlation_cells(
    const fs::path& path) {
  std::ifstream in(path);
  std::map<std::pair<std::string, std::string>, std::optional<double>> cells;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string feature, measure, r_text, rest;
    std::getline(ss, feature, ',');
    std::getline(ss, measure, ',');
    std::getline(ss, r_text, ',');
    cells[{feature, measure}] = r_text.empty()
                                    ? std::optional<double>{}
                                    : std::optional<double>{std::stod(r_text)};
  }
  return cells;
}

bool check_planted_structure() {
  auto t0 = clock_type::now();
  testutil::TempDir dir;
  SyntheticSpec spec;  // 40 groups, half coherent/concentrated/dense, seed 1
  auto result = generate_synthetic(spec, dir.path / "data");
  fs::path out = dir.path / "out";
  run_full(result.config, out);

  auto cells = read_correlation_cells(out / artifact::correlation);
  for (const char* entropy : {"regional_entropy", "expertise_entropy", "aid_entropy"}) {
    auto r = cells[{entropy, "topic_divergence"}];
    expect(r.has_value() && *r >= 0.3,
           std::string(entropy) + " vs divergence r=" +
               (r ? std::to_string(*r) : std::string("missing")) + " (need >= 0.3)");
  }
  for (const char* density : {"directed_density", "reciprocal_density", "undirected_density"}) {
    auto r = cells[{density, "topic_divergence"}];
    expect(r.has_value() && *r <= -0.3,
           std::string(density) + " vs divergence r=" +
               (r ? std::to_string(*r) : std::string("missing")) + " (need <= -0.3)");
  }
  double elapsed = ms_since(t0);
  expect(elapsed < 300000.0, "end-to-end run took " + std::to_string(elapsed) + " ms");
  return failures.empty();
}

// ---- 7: clustering recovery ---------------------------------------------------

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
      if ((ga[std::size_t(u)] == ga[std::size_t(v)]) == (wa[std::size_t(u)] == wa[std::size_t(v)]))
        agree += 1;
    }
  return agree / total;
}

bool check_clustering_recovery() {
  // planted blocks: 8 x 100, in-block edge prob 0.1, cross 0.001
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const int blocks = 8, size = 100, n = blocks * size;
  WeightedGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      bool same = (u / size) == (v / size);
      if (coin(rng) < (same ? 0.1 : 0.001)) g.add_edge(u, v, 1.0);
    }
  std::vector<std::vector<int>> planted(blocks);
  for (int v = 0; v < n; ++v) planted[std::size_t(v / size)].push_back(v);

  ClusterParams params;  // default target 100
  auto clusters = cluster(g, params);
  double ri = rand_index(clusters, planted, n);
  expect(ri >= 0.9, "block recovery pair agreement " + std::to_string(ri) + " (need >= 0.9)");

  double mean = 0;
  for (auto& c : clusters) mean += double(c.size());
  mean /= double(clusters.size());
  expect(mean >= 50.0 && mean <= 200.0,
         "mean cluster size " + std::to_string(mean) + " outside [50, 200]");

  // two disjoint 20-cliques must come back exactly
  WeightedGraph cliques(40);
  for (int block = 0; block < 2; ++block)
    for (int u = 0; u < 20; ++u)
      for (int v = u + 1; v < 20; ++v) cliques.add_edge(block * 20 + u, block * 20 + v, 1.0);
  auto parts = cluster(cliques, params);
  std::set<std::set<int>> got;
  for (auto& c : parts) got.insert(std::set<int>(c.begin(), c.end()));
  std::set<std::set<int>> want;
  std::set<int> a, b;
  for (int v = 0; v < 20; ++v) {
    a.insert(v);
    b.insert(v + 20);
  }
  want.insert(a);
  want.insert(b);
  expect(got == want, "two disjoint cliques not recovered exactly");
  return failures.empty();
}

// ---- 8: determinism -------------------------------------------------------------

bool check_determinism() {
  testutil::TempDir dir;
  SyntheticSpec spec;
  spec.groups = 8;
  spec.members_per_group = 12;
  spec.slices = 6;
  spec.seed = 2;
  auto result = generate_synthetic(spec, dir.path / "data");

  fs::path out1 = dir.path / "run1";
  fs::path out2 = dir.path / "run2";
  run_full(result.config, out1);
  run_full(result.config, out2);

  for (const char* name : {artifact::report_csv, artifact::report_txt}) {
    auto a = testutil::read_all(out1 / name);
    auto b = testutil::read_all(out2 / name);
    expect(!a.empty() && a == b, std::string(name) + " differs between identical runs");
  }
  return failures.empty();
}

// ---- harness ---------------------------------------------------------------------

struct Criterion {
  const char* label;
  bool (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"exact binomial tail matches reference values under 1 ms", check_binomial},
      {"cohesion statistics match brute-force oracles on 1000 digraphs", check_cohesion_oracles},
      {"identity entropies respect [0, ln C] with uniform attaining ln C", check_entropy_bounds},
      {"group topic mean and divergence match hand computation", check_topic_measures},
      {"stability 10/14 and growth 2.0 on the join-leave scenario", check_stability_growth},
      {"planted identity/density structure shows through the report", check_planted_structure},
      {"clustering recovers planted blocks and disjoint cliques", check_clustering_recovery},
      {"identical config and seed reproduce reports byte for byte", check_determinism},
  };

  int failed = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    failures.clear();
    auto t0 = clock_type::now();
    bool ok = false;
    std::string error;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    double elapsed = ms_since(t0);
    if (ok) {
      std::printf("PASS  %d. %s (%.1f ms)\n", index, c.label, elapsed);
    } else {
      ++failed;
      std::printf("FAIL  %d. %s (%.1f ms)\n", index, c.label, elapsed);
      if (!error.empty()) std::printf("      exception: %s\n", error.c_str());
      for (const auto& f : failures) std::printf("      %s\n", f.c_str());
    }
    std::fflush(stdout);
  }
  return failed;
}
