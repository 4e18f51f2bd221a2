#include "groupdyn/identity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "groupdyn/io_util.hpp"
#include "groupdyn/log.hpp"

namespace groupdyn {

std::string Gazetteer::normalize(std::string_view s) {
  std::vector<std::string> words = split_words(s);
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

Gazetteer Gazetteer::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read gazetteer file " + path);
  Gazetteer gaz;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells = split_line(line, '\t');
    if (cells.size() < 2 || cells.size() > 3 || cells[0].empty() || cells[1].empty())
      throw std::runtime_error("malformed gazetteer line " + std::to_string(lineno) + " in " + path);
    gaz.add(cells[0], cells[1], cells.size() == 3 ? cells[2] : "");
  }
  return gaz;
}

void Gazetteer::add(std::string_view pattern, std::string country, std::string state) {
  std::string key = normalize(pattern);
  if (key.empty()) return;
  entries_[std::move(key)] = Region{std::move(country), std::move(state)};
}

std::optional<Gazetteer::Region> Gazetteer::lookup(std::string_view raw_location) const {
  std::string key = normalize(raw_location);
  if (key.empty()) return std::nullopt;
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

namespace {

constexpr const char* kExpertiseNames[kExpertiseClassCount] = {
    "ACADEMICS", "BUSINESS", "POLITICS",   "TECHNOLOGY", "BLOGGING",
    "JOURNALISM", "ART",     "SPORTS",     "MEDICAL",    "OTHERS",
};

}  // namespace

const char* to_string(ExpertiseClass c) { return kExpertiseNames[int(c)]; }

std::optional<ExpertiseClass> expertise_class_from(std::string_view name) {
  for (int i = 0; i < kExpertiseClassCount; ++i) {
    if (name == kExpertiseNames[i]) return ExpertiseClass(i);
  }
  return std::nullopt;
}

ExpertiseLexicon ExpertiseLexicon::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read expertise lexicon file " + path);
  ExpertiseLexicon lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells = split_line(line, '\t');
    if (cells.size() != 2 || cells[0].empty())
      throw std::runtime_error("malformed lexicon line " + std::to_string(lineno) + " in " + path);
    auto cls = expertise_class_from(cells[1]);
    if (!cls)
      throw std::runtime_error("unknown expertise class '" + cells[1] + "' on line " +
                               std::to_string(lineno) + " in " + path);
    lex.add(cells[0], *cls);
  }
  return lex;
}

void ExpertiseLexicon::add(std::string_view term, ExpertiseClass cls) {
  std::vector<std::string> words = split_words(term);
  if (words.empty()) return;
  entries_.emplace_back(std::move(words), cls);
}

std::string regional_identity(const UserProfile* profile, const std::string& event_nation,
                              const Gazetteer& gazetteer) {
  if (!profile || profile->location.empty()) return kUnknownRegion;
  auto region = gazetteer.lookup(profile->location);
  if (!region) return kUnknownRegion;
  if (region->country == event_nation && !region->state.empty())
    return region->country + "-" + region->state;
  return region->country;
}

ExpertiseClass expertise_identity(const UserProfile* profile, const ExpertiseLexicon& lexicon) {
  if (!profile || profile->description.empty()) return ExpertiseClass::OTHERS;
  std::vector<std::string> words = split_words(profile->description);
  if (words.empty()) return ExpertiseClass::OTHERS;
  for (const auto& [term, cls] : lexicon.entries()) {
    if (term.size() > words.size()) continue;
    for (std::size_t start = 0; start + term.size() <= words.size(); ++start) {
      if (std::equal(term.begin(), term.end(), words.begin() + long(start))) return cls;
    }
  }
  return ExpertiseClass::OTHERS;
}

namespace {

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

}  // namespace

AidThresholds compute_aid_thresholds(const Corpus& corpus) {
  std::vector<double> activity, popularity, diffusion;
  activity.reserve(corpus.users.size());
  popularity.reserve(corpus.users.size());
  diffusion.reserve(corpus.users.size());
  for (const auto& user : corpus.users) {
    const AidMetrics m = corpus.aid_metrics(user);
    activity.push_back(double(m.activity));
    popularity.push_back(double(m.popularity));
    diffusion.push_back(double(m.diffusion));
  }
  AidThresholds t;
  t.activity = median(std::move(activity));
  t.popularity = median(std::move(popularity));
  t.diffusion = median(std::move(diffusion));
  return t;
}

AidClass aid_identity(const AidMetrics& metrics, const AidThresholds& thresholds) {
  AidClass c;
  c.activity_hi = double(metrics.activity) >= thresholds.activity;
  c.popularity_hi = double(metrics.popularity) >= thresholds.popularity;
  c.diffusion_hi = double(metrics.diffusion) >= thresholds.diffusion;
  return c;
}

std::string AidClass::label() const {
  std::string s;
  s += activity_hi ? 'H' : 'L';
  s += popularity_hi ? 'H' : 'L';
  s += diffusion_hi ? 'H' : 'L';
  return s;
}

std::optional<double> class_entropy(const std::map<std::string, std::int64_t>& counts) {
  std::int64_t total = 0;
  for (const auto& [cls, count] : counts) {
    (void)cls;
    if (count < 0) throw std::invalid_argument("negative class count");
    total += count;
  }
  if (total == 0) return std::nullopt;
  double h = 0.0;
  for (const auto& [cls, count] : counts) {
    (void)cls;
    if (count == 0) continue;
    const double p = double(count) / double(total);
    h -= p * std::log(p);
  }
  return h;
}

IdentityLabeler::IdentityLabeler(const Corpus& corpus, const std::string& event_nation,
                                 const Gazetteer& gazetteer, const ExpertiseLexicon& lexicon) {
  thresholds_ = compute_aid_thresholds(corpus);
  for (const auto& user : corpus.users) {
    const UserProfile* profile = corpus.find_profile(user);
    regional_.emplace(user, regional_identity(profile, event_nation, gazetteer));
    expertise_.emplace(user, expertise_identity(profile, lexicon));
    aid_.emplace(user, aid_identity(corpus.aid_metrics(user), thresholds_));
  }
  log_info("labeled " + std::to_string(corpus.users.size()) + " users (aid medians: activity " +
           fmt_double(thresholds_.activity) + ", popularity " + fmt_double(thresholds_.popularity) +
           ", diffusion " + fmt_double(thresholds_.diffusion) + ")");
}

const std::string& IdentityLabeler::regional(const UserId& user) const {
  static const std::string unknown = kUnknownRegion;
  auto it = regional_.find(user);
  return it == regional_.end() ? unknown : it->second;
}

ExpertiseClass IdentityLabeler::expertise(const UserId& user) const {
  auto it = expertise_.find(user);
  return it == expertise_.end() ? ExpertiseClass::OTHERS : it->second;
}

AidClass IdentityLabeler::aid(const UserId& user) const {
  auto it = aid_.find(user);
  return it == aid_.end() ? AidClass{} : it->second;
}

GroupIdentity IdentityLabeler::group_identity(const std::vector<UserId>& members) const {
  std::map<std::string, std::int64_t> regional_counts, expertise_counts, aid_counts;
  for (const auto& member : members) {
    const std::string& region = regional(member);
    if (region != kUnknownRegion) regional_counts[region] += 1;
    expertise_counts[to_string(expertise(member))] += 1;
    aid_counts[aid(member).label()] += 1;
  }
  GroupIdentity out;
  out.regional_entropy = class_entropy(regional_counts);
  out.expertise_entropy = class_entropy(expertise_counts);
  out.aid_entropy = class_entropy(aid_counts);
  return out;
}

}  // namespace groupdyn
