#include "groupdyn/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "groupdyn/io_util.hpp"
#include "groupdyn/log.hpp"

using nlohmann::json;

namespace groupdyn {

Vocabulary Vocabulary::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read lexicon file " + path);
  Vocabulary vocab;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    vocab.insert(line);
  }
  return vocab;
}

void Vocabulary::insert(std::string_view term) {
  std::vector<std::string> words = split_words(term);
  if (words.empty()) return;
  std::string joined = words[0];
  for (std::size_t i = 1; i < words.size(); ++i) {
    joined += ' ';
    joined += words[i];
  }
  max_phrase_words_ = std::max(max_phrase_words_, words.size());
  terms_.insert(std::move(joined));
}

bool Vocabulary::contains(const std::string& normalized_term) const {
  return terms_.count(normalized_term) > 0;
}

std::vector<std::string> tokenize(std::string_view raw_text, const Vocabulary& vocab) {
  std::vector<std::string> words = split_words(raw_text);
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < words.size()) {
    std::size_t longest = std::min(vocab.max_phrase_words(), words.size() - i);
    bool matched = false;
    for (std::size_t len = longest; len >= 1; --len) {
      std::string candidate = words[i];
      for (std::size_t k = 1; k < len; ++k) {
        candidate += ' ';
        candidate += words[i + k];
      }
      if (vocab.contains(candidate)) {
        out.push_back(std::move(candidate));
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched) ++i;  // word outside the event vocabulary
  }
  return out;
}

namespace {

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
std::int64_t days_from_civil(std::int64_t y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const int yoe = int(y - era * 400);
  const int doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const int doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + doe - 719468;
}

}  // namespace

std::optional<std::int64_t> parse_iso8601(std::string_view text) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  int consumed = 0;
  std::string str(text);
  if (std::sscanf(str.c_str(), "%4d-%2d-%2d%n", &y, &mo, &d, &consumed) != 3) return std::nullopt;
  std::size_t pos = std::size_t(consumed);
  if (pos < str.size() && (str[pos] == 'T' || str[pos] == ' ')) {
    int used = 0;
    if (std::sscanf(str.c_str() + pos + 1, "%2d:%2d:%2d%n", &h, &mi, &s, &used) != 3)
      return std::nullopt;
    pos += 1 + std::size_t(used);
    if (pos < str.size() && str[pos] == '.') {  // fractional seconds ignored
      ++pos;
      while (pos < str.size() && str[pos] >= '0' && str[pos] <= '9') ++pos;
    }
  }
  std::int64_t offset = 0;
  if (pos < str.size()) {
    if (str[pos] == 'Z') {
      ++pos;
    } else if (str[pos] == '+' || str[pos] == '-') {
      int oh = 0, om = 0, used = 0;
      if (std::sscanf(str.c_str() + pos + 1, "%2d:%2d%n", &oh, &om, &used) != 2) return std::nullopt;
      offset = (oh * 3600 + om * 60) * (str[pos] == '+' ? 1 : -1);
      pos += 1 + std::size_t(used);
    }
  }
  if (pos != str.size()) return std::nullopt;
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || s > 60) return std::nullopt;
  return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s - offset;
}

int slice_index(std::int64_t timestamp, std::int64_t anchor, std::int64_t width) {
  if (timestamp < anchor)
    throw std::out_of_range("timestamp precedes corpus start");
  return int((timestamp - anchor) / width);
}

int Corpus::slice_of(std::int64_t timestamp) const {
  return slice_index(timestamp, start_midnight, slice_config.width_seconds);
}

std::vector<TimeSlice> Corpus::slices() const {
  std::vector<TimeSlice> out;
  out.reserve(std::size_t(slice_count));
  for (int i = 0; i < slice_count; ++i) {
    out.push_back({i, start_midnight + i * slice_config.width_seconds,
                   start_midnight + (i + 1) * slice_config.width_seconds});
  }
  return out;
}

AidMetrics Corpus::aid_metrics(const UserId& user) const {
  AidMetrics computed;
  if (auto it = corpus_metrics.find(user); it != corpus_metrics.end()) computed = it->second;
  const UserProfile* profile = find_profile(user);
  if (!profile) return computed;
  AidMetrics out = computed;
  if (profile->post_count) out.activity = *profile->post_count;
  if (profile->mention_count) out.popularity = *profile->mention_count;
  if (profile->retweeted_count) out.diffusion = *profile->retweeted_count;
  return out;
}

const UserProfile* Corpus::find_profile(const UserId& user) const {
  auto it = profiles.find(user);
  return it == profiles.end() ? nullptr : &it->second;
}

namespace {

std::optional<std::int64_t> parse_timestamp(const json& v) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    double d = v.get<double>();
    if (!std::isfinite(d)) return std::nullopt;
    return std::int64_t(std::floor(d));
  }
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (auto iso = parse_iso8601(s)) return iso;
    // bare epoch seconds as a string
    char* end = nullptr;
    long long n = std::strtoll(s.c_str(), &end, 10);
    if (end && *end == '\0' && !s.empty()) return std::int64_t(n);
  }
  return std::nullopt;
}

std::optional<std::string> optional_string(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) return std::nullopt;
  std::string s = it->get<std::string>();
  if (s.empty()) return std::nullopt;
  return s;
}

std::optional<std::int64_t> optional_count(const json& obj, const char* key, bool& malformed) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) {
    malformed = true;
    return std::nullopt;
  }
  std::int64_t v = it->is_number_float() ? std::int64_t(it->get<double>()) : it->get<std::int64_t>();
  if (v < 0) malformed = true;
  return v;
}

}  // namespace

Corpus load_corpus(const std::string& posts_path, const std::string& profiles_path,
                   const std::string& followers_path, const Vocabulary& vocab,
                   const SliceConfig& config) {
  Corpus corpus;
  corpus.slice_config = config;
  if (config.width_seconds <= 0) throw std::runtime_error("slice width must be positive");

  // profiles
  {
    std::ifstream in(profiles_path);
    if (!in) throw std::runtime_error("cannot read profiles file " + profiles_path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      json obj = json::parse(line, nullptr, false);
      if (obj.is_discarded() || !obj.is_object()) {
        ++corpus.skipped_profiles;
        continue;
      }
      auto user = optional_string(obj, "user");
      if (!user) {
        ++corpus.skipped_profiles;
        continue;
      }
      if (corpus.profiles.count(*user))
        throw std::runtime_error("duplicate user '" + *user + "' in profiles file (line " +
                                 std::to_string(lineno) + ")");
      UserProfile p;
      p.user_id = *user;
      p.location = optional_string(obj, "location").value_or("");
      p.description = optional_string(obj, "description").value_or("");
      bool malformed = false;
      p.post_count = optional_count(obj, "posts", malformed);
      p.mention_count = optional_count(obj, "mentions_received", malformed);
      p.retweeted_count = optional_count(obj, "retweets_received", malformed);
      if (malformed) {
        ++corpus.skipped_profiles;
        continue;
      }
      corpus.users.insert(p.user_id);
      corpus.profiles.emplace(p.user_id, std::move(p));
    }
  }

  // posts
  {
    std::ifstream in(posts_path);
    if (!in) throw std::runtime_error("cannot read posts file " + posts_path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json obj = json::parse(line, nullptr, false);
      if (obj.is_discarded() || !obj.is_object()) {
        ++corpus.skipped_posts;
        continue;
      }
      InteractionRecord rec;
      auto id = optional_string(obj, "id");
      auto user = optional_string(obj, "user");
      auto ts_it = obj.find("ts");
      if (!id || !user || ts_it == obj.end()) {
        ++corpus.skipped_posts;
        continue;
      }
      auto ts = parse_timestamp(*ts_it);
      if (!ts) {
        ++corpus.skipped_posts;
        continue;
      }
      rec.post_id = *id;
      rec.author = *user;
      rec.timestamp = *ts;
      if (auto tokens = obj.find("tokens"); tokens != obj.end() && tokens->is_array()) {
        // explicit tokens are trusted: lowercased and de-'#'-ed, not re-filtered
        for (const auto& t : *tokens) {
          if (!t.is_string()) continue;
          std::vector<std::string> words = split_words(t.get<std::string>());
          std::string joined;
          for (const auto& w : words) {
            if (!joined.empty()) joined += ' ';
            joined += w;
          }
          if (!joined.empty()) rec.tokens.push_back(std::move(joined));
        }
      } else if (auto text = optional_string(obj, "text")) {
        rec.tokens = tokenize(*text, vocab);
      }
      rec.retweet_of = optional_string(obj, "retweet_of");
      rec.reply_to = optional_string(obj, "reply_to");
      if (auto m = obj.find("mentions"); m != obj.end() && m->is_array()) {
        for (const auto& v : *m) {
          if (v.is_string() && !v.get<std::string>().empty())
            rec.mentions.push_back(v.get<std::string>());
        }
      }
      corpus.posts.push_back(std::move(rec));
    }
  }
  if (corpus.posts.empty()) throw std::runtime_error("posts file has no valid records");

  // followers: CSV with header "follower,followee"
  {
    std::ifstream in(followers_path);
    if (!in) throw std::runtime_error("cannot read followers file " + followers_path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("followers file is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "follower,followee")
      throw std::runtime_error("malformed header in followers file (expected 'follower,followee')");
    std::set<std::pair<UserId, UserId>> seen;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      std::vector<std::string> cells = split_line(line, ',');
      if (cells.size() != 2 || cells[0].empty() || cells[1].empty()) {
        ++corpus.skipped_followers;
        continue;
      }
      if (cells[0] == cells[1]) continue;  // self-follow dropped
      if (!seen.emplace(cells[0], cells[1]).second) continue;
      corpus.followers.push_back({cells[0], cells[1]});
    }
  }

  // slice grid: anchored at UTC midnight of the earliest post's day
  std::int64_t min_ts = std::numeric_limits<std::int64_t>::max();
  std::int64_t max_ts = std::numeric_limits<std::int64_t>::min();
  for (const auto& p : corpus.posts) {
    min_ts = std::min(min_ts, p.timestamp);
    max_ts = std::max(max_ts, p.timestamp);
  }
  std::int64_t day = 86400;
  corpus.start_midnight = (min_ts >= 0 ? min_ts / day : (min_ts - day + 1) / day) * day;
  corpus.slice_count =
      int((max_ts - corpus.start_midnight) / corpus.slice_config.width_seconds) + 1;

  // user universe + corpus-recomputed counters
  for (const auto& p : corpus.posts) {
    corpus.users.insert(p.author);
    corpus.corpus_metrics[p.author].activity += 1;
    auto touch = [&corpus](const UserId& u) {
      if (!corpus.profiles.count(u)) ++corpus.unknown_user_refs;
      corpus.users.insert(u);
    };
    if (p.retweet_of) {
      touch(*p.retweet_of);
      corpus.corpus_metrics[*p.retweet_of].diffusion += 1;
    }
    if (p.reply_to) touch(*p.reply_to);
    for (const auto& m : p.mentions) {
      touch(m);
      corpus.corpus_metrics[m].popularity += 1;
    }
  }

  log_info("loaded corpus: " + std::to_string(corpus.posts.size()) + " posts, " +
           std::to_string(corpus.users.size()) + " users, " +
           std::to_string(corpus.followers.size()) + " follower edges, " +
           std::to_string(corpus.slice_count) + " slices (skipped " +
           std::to_string(corpus.skipped_posts) + " posts, " +
           std::to_string(corpus.skipped_profiles) + " profiles, " +
           std::to_string(corpus.skipped_followers) + " follower rows)");
  return corpus;
}

}  // namespace groupdyn
