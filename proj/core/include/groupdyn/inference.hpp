#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace groupdyn {

// Sample Pearson correlation; nullopt with fewer than 3 pairs or zero
// variance in either argument.
std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys);

// Exact one-sided P(X >= k) for X ~ Binomial(n, 1/2), integer binomial
// coefficients (128-bit exact for n <= 127, log-gamma fallback beyond).
double binomial_one_sided(int n, int k);

// The 13 feature rows: 2 directed + 4 reciprocal + 4 undirected cohesion
// statistics, then the 3 identity entropies.
inline constexpr int kFeatureCount = 13;
inline constexpr std::array<const char*, kFeatureCount> kFeatureNames = {
    "directed_density",
    "directed_transitivity",
    "reciprocal_density",
    "reciprocal_transitivity",
    "reciprocal_avg_clustering",
    "reciprocal_avg_shortest_path",
    "undirected_density",
    "undirected_transitivity",
    "undirected_avg_clustering",
    "undirected_avg_shortest_path",
    "regional_entropy",
    "expertise_entropy",
    "aid_entropy",
};

inline constexpr int kMeasureCount = 3;
inline constexpr std::array<const char*, kMeasureCount> kMeasureNames = {
    "topic_divergence",
    "membership_stability",
    "growth_rate",
};

int feature_index(std::string_view name);  // -1 when unknown
int measure_index(std::string_view name);

struct CorrelationCell {
  std::optional<double> r;
  int n = 0;        // contributing groups (pairwise deletion)
  bool bold = false;  // |r| > 0.25
};

using FeatureVector = std::array<std::optional<double>, kFeatureCount>;
using MeasureVector = std::array<std::optional<double>, kMeasureCount>;

struct CorrelationTable {
  std::array<std::array<CorrelationCell, kMeasureCount>, kFeatureCount> cells;

  const CorrelationCell& cell(std::string_view feature, std::string_view measure) const;
};

// Pearson r per (feature, measure) over groups where both are defined.
CorrelationTable correlate(const std::map<int, FeatureVector>& features,
                           const std::map<int, MeasureVector>& measures);

struct BinomialTestResult {
  int n = 0;  // comparisons with both cells present
  int k = 0;  // strict |r_reciprocal| > |r_undirected| successes; ties fail
  double p = 1.0;
  int missing = 0;  // comparisons dropped for missing cells
};

// One comparison per (statistic in {density, transitivity, avg_clustering,
// avg_shortest_path}, table) on the topic-divergence column.
BinomialTestResult reciprocal_vs_undirected_test(std::span<const CorrelationTable> tables);

struct HypothesisCheck {
  int hypothesis = 0;  // 1 = cohesion, 2 = identity
  std::string feature;
  char expected_sign = '+';
  std::optional<double> r;
  bool pass = false;  // strict sign match; missing cell fails
};

// Sign checks on the topic-divergence column: density rows negative and
// avg-shortest-path rows positive (Hypothesis 1), identity entropy rows
// positive (Hypothesis 2).
std::vector<HypothesisCheck> hypothesis_report(const CorrelationTable& table);

}  // namespace groupdyn
