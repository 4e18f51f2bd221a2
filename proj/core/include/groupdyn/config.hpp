#pragma once

#include <cstdint>
#include <string>

namespace groupdyn {

// Flat key=value config; every paper-silent parameter is visible here and
// round-trips through dump/parse unchanged.
struct PipelineConfig {
  std::string posts_path;
  std::string profiles_path;
  std::string followers_path;
  std::string lexicon_path;            // event vocabulary, one term per line
  std::string gazetteer_path;
  std::string expertise_lexicon_path;
  std::string topic_provider_path;     // optional; when set, topics stage loads instead of fitting
  std::string event_nation = "US";

  std::int64_t slice_width_seconds = 86400;

  double cluster_target_size = 100.0;
  bool cluster_weighted = true;
  int min_group_size = 10;
  int min_active_slices = 5;

  int topic_count = 3;
  int gibbs_iterations = 500;
  int gibbs_burn_in = 100;
  int gibbs_sample_window = 100;
  double alpha = -1.0;  // < 0 serialized as "auto" = 50/K
  double eta = 0.01;
  double chain_lambda = 0.5;
  double kl_epsilon = 1e-6;

  std::uint64_t seed = 1;

  static PipelineConfig load(const std::string& path);
  static PipelineConfig parse(const std::string& text);
  std::string dump() const;
  void save(const std::string& path) const;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

}  // namespace groupdyn
