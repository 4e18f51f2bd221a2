#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace groupdyn {

using UserId = std::string;

struct InteractionRecord {
  std::string post_id;
  UserId author;
  std::int64_t timestamp = 0;  // seconds since epoch, UTC
  std::vector<std::string> tokens;
  std::optional<UserId> retweet_of;
  std::optional<UserId> reply_to;
  std::vector<UserId> mentions;
};

// Raw profile row. Counters are optional: absent fields fall back to
// counts recomputed from the event corpus (see Corpus::aid_metrics).
struct UserProfile {
  UserId user_id;
  std::string location;
  std::string description;
  std::optional<std::int64_t> post_count;
  std::optional<std::int64_t> mention_count;
  std::optional<std::int64_t> retweeted_count;
};

struct FollowerEdge {
  UserId follower;
  UserId followee;
};

struct TimeSlice {
  int index = 0;
  std::int64_t start = 0;
  std::int64_t end = 0;  // exclusive; end - start == width
};

struct SliceConfig {
  std::int64_t width_seconds = 86400;
};

// Event lexicon: words and multi-word phrases, stored normalized
// (lowercase, '#' stripped from hashtag terms).
class Vocabulary {
 public:
  Vocabulary() = default;
  static Vocabulary load(const std::string& path);  // one term per line

  void insert(std::string_view term);
  bool contains(const std::string& normalized_term) const;
  std::size_t max_phrase_words() const { return max_phrase_words_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

 private:
  std::set<std::string> terms_;
  std::size_t max_phrase_words_ = 0;
};

// Lowercases, strips '#', keeps only vocabulary terms; multi-word
// phrases matched greedily left-to-right before single words.
// Idempotent on its own space-joined output.
std::vector<std::string> tokenize(std::string_view raw_text, const Vocabulary& vocab);

// activity = posts authored, popularity = mentions received,
// diffusion = retweets received.
struct AidMetrics {
  std::int64_t activity = 0;
  std::int64_t popularity = 0;
  std::int64_t diffusion = 0;
};

struct Corpus {
  std::vector<InteractionRecord> posts;
  std::map<UserId, UserProfile> profiles;  // as loaded from the profiles file
  std::vector<FollowerEdge> followers;     // deduped, no self-follows
  SliceConfig slice_config;

  // UTC midnight of the day containing the earliest post; slice grid anchor.
  std::int64_t start_midnight = 0;
  int slice_count = 0;

  std::size_t skipped_posts = 0;     // malformed post lines
  std::size_t skipped_profiles = 0;  // malformed profile lines
  std::size_t skipped_followers = 0;
  std::size_t unknown_user_refs = 0;  // interactions referencing users with no profile row

  // profile users + post authors + interaction targets
  std::set<UserId> users;

  // Counters recomputed from the posts, used where profile counters are absent.
  std::map<UserId, AidMetrics> corpus_metrics;

  int slice_of(std::int64_t timestamp) const;  // throws if before corpus start
  std::vector<TimeSlice> slices() const;
  AidMetrics aid_metrics(const UserId& user) const;
  const UserProfile* find_profile(const UserId& user) const;
};

// Computes floor((timestamp - anchor) / width); throws std::out_of_range
// for timestamps before the anchor.
int slice_index(std::int64_t timestamp, std::int64_t anchor, std::int64_t width);

// Parses "YYYY-MM-DD[THH:MM:SS[.frac]][Z|+HH:MM|-HH:MM]" to epoch seconds.
std::optional<std::int64_t> parse_iso8601(std::string_view text);

Corpus load_corpus(const std::string& posts_path, const std::string& profiles_path,
                   const std::string& followers_path, const Vocabulary& vocab,
                   const SliceConfig& config = {});

}  // namespace groupdyn
