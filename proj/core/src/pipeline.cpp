#include "groupdyn/pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "groupdyn/cohesion.hpp"
#include "groupdyn/corpus.hpp"
#include "groupdyn/grouping.hpp"
#include "groupdyn/identity.hpp"
#include "groupdyn/inference.hpp"
#include "groupdyn/io_util.hpp"
#include "groupdyn/log.hpp"
#include "groupdyn/sustainability.hpp"
#include "groupdyn/topics.hpp"

namespace groupdyn {

MissingArtifact::MissingArtifact(const std::string& artifact_, const std::string& producer_stage_)
    : std::runtime_error("missing artifact '" + artifact_ + "'; run stage '" + producer_stage_ +
                         "' first"),
      artifact(artifact_),
      producer_stage(producer_stage_) {}

namespace {

void require(const std::filesystem::path& out, const char* artifact_name, const char* producer) {
  if (!std::filesystem::exists(out / artifact_name)) throw MissingArtifact(artifact_name, producer);
}

Corpus load_inputs(const PipelineConfig& cfg) {
  Vocabulary vocab = Vocabulary::load(cfg.lexicon_path);
  SliceConfig slices;
  slices.width_seconds = cfg.slice_width_seconds;
  return load_corpus(cfg.posts_path, cfg.profiles_path, cfg.followers_path, vocab, slices);
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(split_line(line, ','));
  }
  if (rows.empty()) throw std::runtime_error("empty artifact file " + path.string());
  return rows;
}

int parse_int_cell(const std::string& cell, const std::filesystem::path& path) {
  try {
    std::size_t used = 0;
    int v = std::stoi(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("bad integer '" + cell + "' in " + path.string());
  }
}

std::optional<double> parse_double_cell(const std::string& cell,
                                        const std::filesystem::path& path) {
  if (cell.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("bad number '" + cell + "' in " + path.string());
  }
}

std::string cell_or_empty(const std::optional<double>& v) {
  return v ? fmt_double(*v) : std::string();
}

// Rebuild the filtered groups from the cluster stage's exports so later
// stages do not depend on re-running the clustering.
std::vector<SocialGroup> read_groups(const std::filesystem::path& out, int slice_count) {
  const auto members_rows = read_csv(out / artifact::groups);
  std::map<int, SocialGroup> groups;
  for (std::size_t i = 1; i < members_rows.size(); ++i) {
    const auto& row = members_rows[i];
    if (row.size() != 2) throw std::runtime_error("malformed row in groups artifact");
    const int gid = parse_int_cell(row[1], out / artifact::groups);
    groups[gid].group_id = gid;
    groups[gid].members.push_back(row[0]);
  }
  for (auto& [gid, group] : groups) {
    (void)gid;
    std::sort(group.members.begin(), group.members.end());
    group.snapshots.assign(std::size_t(slice_count), {});
  }
  const auto snapshot_rows = read_csv(out / artifact::snapshots);
  for (std::size_t i = 1; i < snapshot_rows.size(); ++i) {
    const auto& row = snapshot_rows[i];
    if (row.size() != 3) throw std::runtime_error("malformed row in snapshots artifact");
    const int gid = parse_int_cell(row[0], out / artifact::snapshots);
    const int slice = parse_int_cell(row[1], out / artifact::snapshots);
    auto it = groups.find(gid);
    if (it == groups.end() || slice < 0 || slice >= slice_count)
      throw std::runtime_error("snapshots artifact references unknown group or slice");
    it->second.snapshots[std::size_t(slice)].push_back(row[2]);
  }
  std::vector<SocialGroup> out_groups;
  out_groups.reserve(groups.size());
  for (auto& [gid, group] : groups) {
    (void)gid;
    for (auto& snap : group.snapshots) {
      std::sort(snap.begin(), snap.end());
      if (!snap.empty()) ++group.active_slice_count;
    }
    out_groups.push_back(std::move(group));
  }
  return out_groups;
}

}  // namespace

void run_ingest(const PipelineConfig& cfg, const std::filesystem::path& out) {
  std::filesystem::create_directories(out);
  Corpus corpus = load_inputs(cfg);

  std::vector<std::int64_t> posts_per_slice(std::size_t(corpus.slice_count), 0);
  for (const auto& post : corpus.posts) ++posts_per_slice[std::size_t(corpus.slice_of(post.timestamp))];
  std::ostringstream slices;
  slices << "slice,start,end,posts\n";
  for (const TimeSlice& s : corpus.slices()) {
    slices << s.index << ',' << s.start << ',' << s.end << ','
           << posts_per_slice[std::size_t(s.index)] << "\n";
  }
  atomic_write(out / artifact::slices, slices.str());

  std::ostringstream users;
  users << "user,posts,mentions_received,retweets_received\n";
  for (const auto& user : corpus.users) {
    const AidMetrics m = corpus.aid_metrics(user);
    users << user << ',' << m.activity << ',' << m.popularity << ',' << m.diffusion << "\n";
  }
  atomic_write(out / artifact::users, users.str());
  log_info("ingest: wrote " + (out / artifact::slices).string() + " and " +
           (out / artifact::users).string());
}

void run_cluster(const PipelineConfig& cfg, const std::filesystem::path& out) {
  require(out, artifact::users, "ingest");
  Corpus corpus = load_inputs(cfg);
  InteractionGraph graph = build_interaction_graph(corpus, cfg.cluster_weighted);

  ClusterParams params;
  params.target_avg_size = cfg.cluster_target_size;
  params.seed = cfg.seed;
  std::vector<std::vector<int>> clusters = cluster(graph.graph, params);
  std::vector<SocialGroup> groups = make_groups(clusters, graph, corpus);
  groups = filter_groups(std::move(groups), cfg.min_group_size, cfg.min_active_slices);

  std::ostringstream members;
  members << "user,group_id\n";
  for (const SocialGroup& g : groups) {
    for (const auto& member : g.members) members << member << ',' << g.group_id << "\n";
  }
  atomic_write(out / artifact::groups, members.str());

  std::ostringstream snapshots;
  snapshots << "group_id,slice,user\n";
  for (const SocialGroup& g : groups) {
    for (std::size_t t = 0; t < g.snapshots.size(); ++t) {
      for (const auto& member : g.snapshots[t]) {
        snapshots << g.group_id << ',' << t << ',' << member << "\n";
      }
    }
  }
  atomic_write(out / artifact::snapshots, snapshots.str());
  log_info("cluster: " + std::to_string(groups.size()) + " groups after filtering");
}

void run_cohesion(const PipelineConfig& cfg, const std::filesystem::path& out) {
  require(out, artifact::groups, "cluster");
  Corpus corpus = load_inputs(cfg);
  std::vector<SocialGroup> groups = read_groups(out, corpus.slice_count);
  FollowerIndex followers = FollowerIndex::build(corpus.followers);

  std::ostringstream csv;
  csv << "group_id";
  for (int f = 0; f < 10; ++f) csv << ',' << kFeatureNames[std::size_t(f)];
  csv << "\n";
  for (const SocialGroup& g : groups) {
    const GroupCohesion c = group_cohesion(g.members, followers);
    csv << g.group_id << ',' << cell_or_empty(c.directed.density) << ','
        << cell_or_empty(c.directed.transitivity) << ',' << cell_or_empty(c.reciprocal.density)
        << ',' << cell_or_empty(c.reciprocal.transitivity) << ','
        << cell_or_empty(c.reciprocal.avg_clustering) << ','
        << cell_or_empty(c.reciprocal.avg_shortest_path) << ','
        << cell_or_empty(c.undirected.density) << ',' << cell_or_empty(c.undirected.transitivity)
        << ',' << cell_or_empty(c.undirected.avg_clustering) << ','
        << cell_or_empty(c.undirected.avg_shortest_path) << "\n";
  }
  atomic_write(out / artifact::cohesion, csv.str());
  log_info("cohesion: wrote statistics for " + std::to_string(groups.size()) + " groups");
}

void run_identity(const PipelineConfig& cfg, const std::filesystem::path& out) {
  require(out, artifact::groups, "cluster");
  Corpus corpus = load_inputs(cfg);
  std::vector<SocialGroup> groups = read_groups(out, corpus.slice_count);
  Gazetteer gazetteer = Gazetteer::load(cfg.gazetteer_path);
  ExpertiseLexicon lexicon = ExpertiseLexicon::load(cfg.expertise_lexicon_path);
  IdentityLabeler labeler(corpus, cfg.event_nation, gazetteer, lexicon);

  std::ostringstream csv;
  csv << "group_id,regional_entropy,expertise_entropy,aid_entropy\n";
  for (const SocialGroup& g : groups) {
    const GroupIdentity id = labeler.group_identity(g.members);
    csv << g.group_id << ',' << cell_or_empty(id.regional_entropy) << ','
        << cell_or_empty(id.expertise_entropy) << ',' << cell_or_empty(id.aid_entropy) << "\n";
  }
  atomic_write(out / artifact::identity, csv.str());
  log_info("identity: wrote entropies for " + std::to_string(groups.size()) + " groups");
}

void run_topics(const PipelineConfig& cfg, const std::filesystem::path& out) {
  require(out, artifact::users, "ingest");
  Corpus corpus = load_inputs(cfg);

  BetaTable beta;
  std::vector<TopWord> words;
  if (!cfg.topic_provider_path.empty()) {
    beta = load_topics(cfg.topic_provider_path, corpus.slice_count);
    log_info("topics: loaded " + std::to_string(beta.rows.size()) + " provider rows");
  } else {
    TopicModelParams params;
    params.topic_count = cfg.topic_count;
    params.iterations = cfg.gibbs_iterations;
    params.burn_in = cfg.gibbs_burn_in;
    params.sample_window = cfg.gibbs_sample_window;
    params.alpha = cfg.alpha;
    params.eta = cfg.eta;
    params.chain_lambda = cfg.chain_lambda;
    params.seed = cfg.seed;
    TopicModelState state = fit_topics(corpus, params);
    beta = std::move(state.beta);
    words = top_words(state);
    log_info("topics: fitted " + std::to_string(beta.rows.size()) + " user-slice distributions");
  }

  std::ostringstream csv;
  csv << "user,slice";
  for (int k = 1; k <= beta.topic_count; ++k) csv << ",p" << k;
  csv << "\n";
  for (const auto& [key, probs] : beta.rows) {
    csv << key.first << ',' << key.second;
    for (double p : probs) csv << ',' << fmt_double(p);
    csv << "\n";
  }
  atomic_write(out / artifact::beta, csv.str());

  std::ostringstream top;
  top << "slice,topic,rank,word,probability\n";
  for (const TopWord& w : words) {
    top << w.slice << ',' << w.topic << ',' << w.rank << ',' << w.word << ','
        << fmt_double(w.probability) << "\n";
  }
  atomic_write(out / artifact::top_words, top.str());
}

void run_sustainability(const PipelineConfig& cfg, const std::filesystem::path& out) {
  require(out, artifact::snapshots, "cluster");
  require(out, artifact::beta, "topics");
  Corpus corpus = load_inputs(cfg);
  std::vector<SocialGroup> groups = read_groups(out, corpus.slice_count);
  BetaTable beta = load_topics((out / artifact::beta).string(), corpus.slice_count);

  std::ostringstream series_csv;
  series_csv << "group_id,slice,measure,value\n";
  std::ostringstream summary_csv;
  summary_csv << "group_id,mean_TD,mean_MS,mean_GR\n";
  for (const SocialGroup& g : groups) {
    const SustainabilitySeries s = build_series(g, beta, cfg.kl_epsilon);
    for (std::size_t t = 0; t < s.td.size(); ++t) {
      if (s.td[t]) series_csv << g.group_id << ',' << t << ",topic_divergence," << fmt_double(*s.td[t]) << "\n";
      if (s.ms[t]) series_csv << g.group_id << ',' << t << ",membership_stability," << fmt_double(*s.ms[t]) << "\n";
      if (s.gr[t]) series_csv << g.group_id << ',' << t << ",growth_rate," << fmt_double(*s.gr[t]) << "\n";
    }
    summary_csv << g.group_id << ',' << cell_or_empty(s.mean_td) << ','
                << cell_or_empty(s.mean_ms) << ',' << cell_or_empty(s.mean_gr) << "\n";
  }
  atomic_write(out / artifact::series, series_csv.str());
  atomic_write(out / artifact::summary, summary_csv.str());
  log_info("sustainability: wrote series and summary for " + std::to_string(groups.size()) +
           " groups");
}

void run_correlate(const PipelineConfig& cfg, const std::filesystem::path& out) {
  (void)cfg;
  require(out, artifact::cohesion, "cohesion");
  require(out, artifact::identity, "identity");
  require(out, artifact::summary, "sustainability");

  std::map<int, FeatureVector> features;
  {
    const auto rows = read_csv(out / artifact::cohesion);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& row = rows[i];
      if (row.size() != 11) throw std::runtime_error("malformed row in cohesion artifact");
      FeatureVector& fv = features[parse_int_cell(row[0], out / artifact::cohesion)];
      for (int f = 0; f < 10; ++f) {
        fv[std::size_t(f)] = parse_double_cell(row[std::size_t(f) + 1], out / artifact::cohesion);
      }
    }
  }
  {
    const auto rows = read_csv(out / artifact::identity);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& row = rows[i];
      if (row.size() != 4) throw std::runtime_error("malformed row in identity artifact");
      FeatureVector& fv = features[parse_int_cell(row[0], out / artifact::identity)];
      for (int f = 0; f < 3; ++f) {
        fv[std::size_t(f) + 10] = parse_double_cell(row[std::size_t(f) + 1], out / artifact::identity);
      }
    }
  }
  std::map<int, MeasureVector> measures;
  {
    const auto rows = read_csv(out / artifact::summary);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& row = rows[i];
      if (row.size() != 4) throw std::runtime_error("malformed row in summary artifact");
      MeasureVector& mv = measures[parse_int_cell(row[0], out / artifact::summary)];
      for (int m = 0; m < 3; ++m) {
        mv[std::size_t(m)] = parse_double_cell(row[std::size_t(m) + 1], out / artifact::summary);
      }
    }
  }

  const CorrelationTable table = correlate(features, measures);
  std::ostringstream csv;
  csv << "feature,measure,r,n,bold\n";
  for (int f = 0; f < kFeatureCount; ++f) {
    for (int m = 0; m < kMeasureCount; ++m) {
      const CorrelationCell& cell = table.cells[std::size_t(f)][std::size_t(m)];
      csv << kFeatureNames[std::size_t(f)] << ',' << kMeasureNames[std::size_t(m)] << ','
          << cell_or_empty(cell.r) << ',' << cell.n << ',' << (cell.bold ? 1 : 0) << "\n";
    }
  }
  atomic_write(out / artifact::correlation, csv.str());
  log_info("correlate: wrote " + std::to_string(kFeatureCount * kMeasureCount) + " cells over " +
           std::to_string(features.size()) + " groups");
}

namespace {

CorrelationTable read_correlation(const std::filesystem::path& path) {
  CorrelationTable table;
  const auto rows = read_csv(path);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != 5) throw std::runtime_error("malformed row in correlation artifact");
    const int f = feature_index(row[0]);
    const int m = measure_index(row[1]);
    if (f < 0 || m < 0)
      throw std::runtime_error("unknown feature/measure '" + row[0] + "'/'" + row[1] + "' in " +
                               path.string());
    CorrelationCell& cell = table.cells[std::size_t(f)][std::size_t(m)];
    cell.r = parse_double_cell(row[2], path);
    cell.n = parse_int_cell(row[3], path);
    cell.bold = row[4] == "1";
  }
  return table;
}

}  // namespace

void run_report(const PipelineConfig& cfg, const std::filesystem::path& out,
                const std::vector<std::string>& extra_correlations) {
  (void)cfg;
  require(out, artifact::correlation, "correlate");
  std::vector<CorrelationTable> tables;
  tables.push_back(read_correlation(out / artifact::correlation));
  for (const auto& path : extra_correlations) tables.push_back(read_correlation(path));

  // matrix layout, bold cells starred
  std::ostringstream csv;
  csv << "feature";
  for (int m = 0; m < kMeasureCount; ++m) csv << ',' << kMeasureNames[std::size_t(m)];
  csv << "\n";
  for (int f = 0; f < kFeatureCount; ++f) {
    csv << kFeatureNames[std::size_t(f)];
    for (int m = 0; m < kMeasureCount; ++m) {
      const CorrelationCell& cell = tables.front().cells[std::size_t(f)][std::size_t(m)];
      csv << ',' << cell_or_empty(cell.r) << (cell.bold ? "*" : "");
    }
    csv << "\n";
  }
  atomic_write(out / artifact::report_csv, csv.str());

  const BinomialTestResult binom = reciprocal_vs_undirected_test(tables);
  const std::vector<HypothesisCheck> checks = hypothesis_report(tables.front());
  std::ostringstream txt;
  txt << "correlation tables: " << tables.size() << "\n";
  txt << "binomial test |r_reciprocal| > |r_undirected| on topic_divergence: n=" << binom.n
      << " k=" << binom.k << " p=" << fmt_double(binom.p) << " missing=" << binom.missing << "\n";
  int current = 0;
  for (const HypothesisCheck& check : checks) {
    if (check.hypothesis != current) {
      current = check.hypothesis;
      txt << (current == 1 ? "hypothesis 1 (cohesion vs sustainability):"
                           : "hypothesis 2 (identity vs sustainability):")
          << "\n";
    }
    txt << "  " << check.feature << " expected " << check.expected_sign << " r="
        << (check.r ? fmt_double(*check.r) : std::string("missing")) << ' '
        << (check.pass ? "pass" : "fail") << "\n";
  }
  atomic_write(out / artifact::report_txt, txt.str());
  log_info("report: wrote " + (out / artifact::report_csv).string() + " and " +
           (out / artifact::report_txt).string());
}

void run_full(const PipelineConfig& cfg, const std::filesystem::path& out) {
  run_ingest(cfg, out);
  run_cluster(cfg, out);
  run_cohesion(cfg, out);
  run_identity(cfg, out);
  run_topics(cfg, out);
  run_sustainability(cfg, out);
  run_correlate(cfg, out);
  run_report(cfg, out);
}

}  // namespace groupdyn
