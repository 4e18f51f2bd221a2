#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "groupdyn/config.hpp"
#include "groupdyn/corpus.hpp"

namespace groupdyn {

// Deterministic synthetic-corpus generator with planted structure: the
// first coherent/concentrated/dense fraction of groups gets one discussion
// topic, a single identity class per type, and a dense reciprocal follower
// core; the rest mix topics, spread identities over all classes, and stay
// sparse. Groups never interact across group lines, so interaction
// clustering can recover the planting exactly.
struct SyntheticSpec {
  int groups = 40;
  int members_per_group = 100;
  int slices = 12;
  double coherent_fraction = 0.5;      // topic-coherence mix
  double concentrated_fraction = 0.5;  // identity-concentration mix
  double dense_fraction = 0.5;         // follower-density mix
  std::uint64_t seed = 1;

  int topic_count = 3;
  int words_per_topic = 30;
  int tokens_per_post = 6;
  double active_prob = 0.7;   // member posts in a slice (member 0 always posts)
  int mentions_per_post = 2;
  double dense_follow_prob = 0.30;   // reciprocal pair prob inside dense groups
  double sparse_follow_prob = 0.02;  // inside the rest
  double oneway_follow_prob = 0.05;  // extra one-way arcs inside any group
};

struct SynthResult {
  PipelineConfig config;  // paths filled in, ready to run the pipeline
  std::vector<std::vector<UserId>> planted_groups;
  std::filesystem::path config_path;
};

// Writes posts.jsonl, profiles.jsonl, followers.csv, vocab.txt,
// gazetteer.tsv, expertise.tsv, and synth_config.cfg under dir.
SynthResult generate_synthetic(const SyntheticSpec& spec, const std::filesystem::path& dir);

}  // namespace groupdyn
