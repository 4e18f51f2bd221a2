#pragma once

#include <optional>
#include <vector>

#include "groupdyn/grouping.hpp"
#include "groupdyn/topics.hpp"

namespace groupdyn {

// MS(g_t) = |g_t| / (|g_{t-1} symdiff g_t| + 1); missing when g_t is empty.
// Inputs must be sorted.
std::optional<double> membership_stability(const std::vector<UserId>& g_prev,
                                           const std::vector<UserId>& g_t);

// GR(g_t) = |g_t| / |g_{t-1}|; missing when g_{t-1} is empty.
std::optional<double> growth_rate(const std::vector<UserId>& g_prev,
                                  const std::vector<UserId>& g_t);

struct SustainabilitySeries {
  int group_id = 0;
  // One slot per slice; undefined slices stay nullopt and are dropped from
  // the means, never imputed.
  std::vector<std::optional<double>> td;
  std::vector<std::optional<double>> ms;
  std::vector<std::optional<double>> gr;
  std::optional<double> mean_td;
  std::optional<double> mean_ms;
  std::optional<double> mean_gr;
};

// TD at every slice with an active member holding a distribution; MS at
// every t >= 1 with g_t nonempty; GR at every t >= 1 with both snapshots
// nonempty (keeps GR > 0 where defined).
SustainabilitySeries build_series(const SocialGroup& group, const BetaTable& beta,
                                  double epsilon);

}  // namespace groupdyn
