#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "groupdyn/corpus.hpp"

namespace groupdyn {

inline constexpr const char* kUnknownRegion = "UNKNOWN";

// Offline location resolver: normalized location string -> (country, state).
class Gazetteer {
 public:
  static Gazetteer load(const std::string& path);  // TSV pattern<TAB>country[<TAB>state]

  void add(std::string_view pattern, std::string country, std::string state = "");

  struct Region {
    std::string country;
    std::string state;  // may be empty
  };
  std::optional<Region> lookup(std::string_view raw_location) const;

  // Case/punctuation-insensitive key used for both patterns and lookups.
  static std::string normalize(std::string_view s);

 private:
  std::map<std::string, Region> entries_;
};

enum class ExpertiseClass {
  ACADEMICS,
  BUSINESS,
  POLITICS,
  TECHNOLOGY,
  BLOGGING,
  JOURNALISM,
  ART,
  SPORTS,
  MEDICAL,
  OTHERS,
};
inline constexpr int kExpertiseClassCount = 10;

const char* to_string(ExpertiseClass c);
std::optional<ExpertiseClass> expertise_class_from(std::string_view name);

// Keyword/phrase -> class; file order is the priority order and the first
// entry whose word sequence occurs in the description wins.
class ExpertiseLexicon {
 public:
  static ExpertiseLexicon load(const std::string& path);  // TSV term<TAB>CLASS
  void add(std::string_view term, ExpertiseClass cls);
  const std::vector<std::pair<std::vector<std::string>, ExpertiseClass>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::vector<std::string>, ExpertiseClass>> entries_;
};

// Medians of the three AID metrics over all corpus users.
struct AidThresholds {
  double activity = 0;
  double popularity = 0;
  double diffusion = 0;
};

// One of 8 classes: a high/low level per metric; value >= median is high.
struct AidClass {
  bool activity_hi = false;
  bool popularity_hi = false;
  bool diffusion_hi = false;

  int index() const { return (activity_hi << 2) | (popularity_hi << 1) | int(diffusion_hi); }
  std::string label() const;  // e.g. "HLH"
  friend bool operator==(const AidClass&, const AidClass&) = default;
};
inline constexpr int kAidClassCount = 8;

std::string regional_identity(const UserProfile* profile, const std::string& event_nation,
                              const Gazetteer& gazetteer);
ExpertiseClass expertise_identity(const UserProfile* profile, const ExpertiseLexicon& lexicon);
AidThresholds compute_aid_thresholds(const Corpus& corpus);
AidClass aid_identity(const AidMetrics& metrics, const AidThresholds& thresholds);

// Shannon entropy (natural log) of the class counts. nullopt when the
// distribution is empty (e.g. every member UNKNOWN).
std::optional<double> class_entropy(const std::map<std::string, std::int64_t>& counts);

struct GroupIdentity {
  std::optional<double> regional_entropy;
  std::optional<double> expertise_entropy;
  std::optional<double> aid_entropy;
};

// Per-user labels computed once over the corpus, then folded per group.
class IdentityLabeler {
 public:
  IdentityLabeler(const Corpus& corpus, const std::string& event_nation,
                  const Gazetteer& gazetteer, const ExpertiseLexicon& lexicon);

  const std::string& regional(const UserId& user) const;
  ExpertiseClass expertise(const UserId& user) const;
  AidClass aid(const UserId& user) const;
  const AidThresholds& thresholds() const { return thresholds_; }

  // UNKNOWN regional labels are excluded from the regional distribution.
  GroupIdentity group_identity(const std::vector<UserId>& members) const;

 private:
  std::map<UserId, std::string> regional_;
  std::map<UserId, ExpertiseClass> expertise_;
  std::map<UserId, AidClass> aid_;
  AidThresholds thresholds_;
};

}  // namespace groupdyn
