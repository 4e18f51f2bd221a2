#include "groupdyn/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "groupdyn/identity.hpp"
#include "groupdyn/io_util.hpp"
#include "groupdyn/log.hpp"

using nlohmann::json;

namespace groupdyn {

namespace {

constexpr std::int64_t kBaseTimestamp = 1313798400;  // midnight-aligned

struct RegionFixture {
  const char* location;
  const char* country;
  const char* state;
};

constexpr RegionFixture kRegions[] = {
    {"Columbus, OH", "US", "OH"},     {"New York, NY", "US", "NY"},
    {"Austin, TX", "US", "TX"},       {"San Francisco, CA", "US", "CA"},
    {"Seattle, WA", "US", "WA"},      {"London", "GB", ""},
    {"Toronto", "CA", ""},            {"Berlin", "DE", ""},
    {"Sydney", "AU", ""},             {"Mumbai", "IN", ""},
};
constexpr int kRegionCount = int(std::size(kRegions));

struct LexiconFixture {
  const char* term;
  const char* cls;
};

constexpr LexiconFixture kLexicon[] = {
    {"professor", "ACADEMICS"},      {"phd researcher", "ACADEMICS"},
    {"entrepreneur", "BUSINESS"},    {"marketing", "BUSINESS"},
    {"policy advocate", "POLITICS"}, {"senator", "POLITICS"},
    {"software engineer", "TECHNOLOGY"}, {"developer", "TECHNOLOGY"},
    {"blogger", "BLOGGING"},         {"journalist", "JOURNALISM"},
    {"reporter", "JOURNALISM"},      {"artist", "ART"},
    {"painter", "ART"},              {"coach", "SPORTS"},
    {"athlete", "SPORTS"},           {"nurse", "MEDICAL"},
    {"doctor", "MEDICAL"},
};

// one description per expertise class, classified by the lexicon above
constexpr const char* kDescriptions[kExpertiseClassCount] = {
    "professor of sociology",
    "entrepreneur and investor",
    "policy advocate downtown",
    "software engineer building tools",
    "blogger writing daily",
    "journalist covering storms",
    "artist and painter",
    "volleyball coach on weekends",
    "nurse at the city hospital",
    "just here for the updates",
};

std::string user_id(int group, int member) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "g%03du%04d", group, member);
  return buf;
}

std::string topic_word(int topic, int word) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "topic%dword%02d", topic, word);
  return buf;
}

void check_prob(double v, const char* name) {
  if (v < 0.0 || v > 1.0) throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

SynthResult generate_synthetic(const SyntheticSpec& spec, const std::filesystem::path& dir) {
  if (spec.groups < 1) throw std::invalid_argument("groups must be >= 1");
  if (spec.members_per_group < 2) throw std::invalid_argument("members_per_group must be >= 2");
  if (spec.slices < 1) throw std::invalid_argument("slices must be >= 1");
  if (spec.topic_count < 1) throw std::invalid_argument("topic_count must be >= 1");
  if (spec.words_per_topic < 1) throw std::invalid_argument("words_per_topic must be >= 1");
  if (spec.tokens_per_post < 1) throw std::invalid_argument("tokens_per_post must be >= 1");
  if (spec.mentions_per_post < 0) throw std::invalid_argument("mentions_per_post must be >= 0");
  check_prob(spec.coherent_fraction, "coherent_fraction");
  check_prob(spec.concentrated_fraction, "concentrated_fraction");
  check_prob(spec.dense_fraction, "dense_fraction");
  check_prob(spec.active_prob, "active_prob");
  check_prob(spec.dense_follow_prob, "dense_follow_prob");
  check_prob(spec.sparse_follow_prob, "sparse_follow_prob");
  check_prob(spec.oneway_follow_prob, "oneway_follow_prob");

  std::filesystem::create_directories(dir);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const int coherent_groups = int(double(spec.groups) * spec.coherent_fraction + 0.5);
  const int concentrated_groups = int(double(spec.groups) * spec.concentrated_fraction + 0.5);
  const int dense_groups = int(double(spec.groups) * spec.dense_fraction + 0.5);

  SynthResult result;
  result.planted_groups.assign(std::size_t(spec.groups), {});
  for (int g = 0; g < spec.groups; ++g) {
    for (int m = 0; m < spec.members_per_group; ++m) {
      result.planted_groups[std::size_t(g)].push_back(user_id(g, m));
    }
  }

  // profiles: identity planting. Concentrated groups pin every member to one
  // class per identity type; the rest draw classes per member. AID counters
  // use values well below / above the global medians so the planting
  // survives median recomputation.
  std::ostringstream profiles;
  auto aid_value = [&](bool hi) {
    return hi ? 100 + int(rng() % 20) : 10 + int(rng() % 5);
  };
  for (int g = 0; g < spec.groups; ++g) {
    const bool concentrated = g < concentrated_groups;
    const int group_region = g % kRegionCount;
    const int group_expertise = g % kExpertiseClassCount;
    const int group_aid = g % kAidClassCount;
    for (int m = 0; m < spec.members_per_group; ++m) {
      const int region = concentrated ? group_region : int(rng() % kRegionCount);
      const int expertise = concentrated ? group_expertise : int(rng() % kExpertiseClassCount);
      const int aid_bits = concentrated ? group_aid : int(rng() % kAidClassCount);
      json row;
      row["user"] = user_id(g, m);
      row["location"] = kRegions[region].location;
      row["description"] = kDescriptions[expertise];
      row["posts"] = aid_value(aid_bits & 4);
      row["mentions_received"] = aid_value(aid_bits & 2);
      row["retweets_received"] = aid_value(aid_bits & 1);
      profiles << row.dump() << "\n";
    }
  }
  atomic_write(dir / "profiles.jsonl", profiles.str());

  // posts: coherent groups speak one topic; the rest give each member a
  // fresh topic per slice so member distributions disagree within a slice.
  // Mentions stay inside the group, so interaction communities equal the
  // planted groups.
  std::ostringstream posts;
  int post_counter = 0;
  for (int t = 0; t < spec.slices; ++t) {
    for (int g = 0; g < spec.groups; ++g) {
      const bool coherent = g < coherent_groups;
      const int group_topic = g % spec.topic_count;
      for (int m = 0; m < spec.members_per_group; ++m) {
        if (m != 0 && unit(rng) > spec.active_prob) continue;
        const int topic = coherent ? group_topic : int(rng() % std::uint64_t(spec.topic_count));
        std::string text;
        for (int i = 0; i < spec.tokens_per_post; ++i) {
          if (!text.empty()) text += ' ';
          text += topic_word(topic, int(rng() % std::uint64_t(spec.words_per_topic)));
        }
        json row;
        char pid[24];
        std::snprintf(pid, sizeof pid, "p%08d", post_counter++);
        row["id"] = pid;
        row["user"] = user_id(g, m);
        row["ts"] = kBaseTimestamp + std::int64_t(t) * 86400 +
                    3600 + std::int64_t((m * 37 + g * 11) % 79000);
        row["text"] = text;
        json mentions = json::array();
        for (int i = 0; i < spec.mentions_per_post; ++i) {
          int other = int(rng() % std::uint64_t(spec.members_per_group));
          if (other == m) other = (other + 1) % spec.members_per_group;
          mentions.push_back(user_id(g, other));
        }
        row["mentions"] = mentions;
        posts << row.dump() << "\n";
      }
    }
  }
  atomic_write(dir / "posts.jsonl", posts.str());

  // followers: reciprocal core inside dense groups, plus scattered one-way
  // arcs; never across groups
  std::ostringstream followers;
  followers << "follower,followee\n";
  for (int g = 0; g < spec.groups; ++g) {
    const double pair_prob = g < dense_groups ? spec.dense_follow_prob : spec.sparse_follow_prob;
    for (int a = 0; a < spec.members_per_group; ++a) {
      for (int b = a + 1; b < spec.members_per_group; ++b) {
        if (unit(rng) < pair_prob) {
          followers << user_id(g, a) << ',' << user_id(g, b) << "\n";
          followers << user_id(g, b) << ',' << user_id(g, a) << "\n";
        } else if (unit(rng) < spec.oneway_follow_prob) {
          if (rng() & 1) {
            followers << user_id(g, a) << ',' << user_id(g, b) << "\n";
          } else {
            followers << user_id(g, b) << ',' << user_id(g, a) << "\n";
          }
        }
      }
    }
  }
  atomic_write(dir / "followers.csv", followers.str());

  std::ostringstream vocab;
  for (int k = 0; k < spec.topic_count; ++k) {
    for (int w = 0; w < spec.words_per_topic; ++w) vocab << topic_word(k, w) << "\n";
  }
  atomic_write(dir / "vocab.txt", vocab.str());

  std::ostringstream gazetteer;
  for (const auto& region : kRegions) {
    gazetteer << region.location << '\t' << region.country;
    if (region.state[0] != '\0') gazetteer << '\t' << region.state;
    gazetteer << "\n";
  }
  atomic_write(dir / "gazetteer.tsv", gazetteer.str());

  std::ostringstream lexicon;
  for (const auto& entry : kLexicon) lexicon << entry.term << '\t' << entry.cls << "\n";
  atomic_write(dir / "expertise.tsv", lexicon.str());

  PipelineConfig cfg;
  cfg.posts_path = (dir / "posts.jsonl").string();
  cfg.profiles_path = (dir / "profiles.jsonl").string();
  cfg.followers_path = (dir / "followers.csv").string();
  cfg.lexicon_path = (dir / "vocab.txt").string();
  cfg.gazetteer_path = (dir / "gazetteer.tsv").string();
  cfg.expertise_lexicon_path = (dir / "expertise.tsv").string();
  cfg.event_nation = "US";
  cfg.cluster_target_size = double(spec.members_per_group);
  cfg.min_group_size = std::min(10, spec.members_per_group);
  cfg.min_active_slices = std::min(5, spec.slices);
  cfg.topic_count = spec.topic_count;
  cfg.seed = spec.seed;
  cfg.save(dir / "synth_config.cfg");

  result.config = cfg;
  result.config_path = dir / "synth_config.cfg";
  log_info("synthetic corpus written to " + dir.string() + " (" + std::to_string(spec.groups) +
           " groups x " + std::to_string(spec.members_per_group) + " members, " +
           std::to_string(spec.slices) + " slices)");
  return result;
}

}  // namespace groupdyn
