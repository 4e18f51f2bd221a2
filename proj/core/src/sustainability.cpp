#include "groupdyn/sustainability.hpp"

#include <algorithm>

namespace groupdyn {

namespace {

std::size_t symmetric_difference_size(const std::vector<UserId>& a, const std::vector<UserId>& b) {
  std::size_t diff = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++diff;
      ++i;
    } else if (b[j] < a[i]) {
      ++diff;
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return diff + (a.size() - i) + (b.size() - j);
}

std::optional<double> mean_defined(const std::vector<std::optional<double>>& values) {
  double sum = 0.0;
  int n = 0;
  for (const auto& v : values) {
    if (v) {
      sum += *v;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / double(n);
}

}  // namespace

std::optional<double> membership_stability(const std::vector<UserId>& g_prev,
                                           const std::vector<UserId>& g_t) {
  if (g_t.empty()) return std::nullopt;
  return double(g_t.size()) / double(symmetric_difference_size(g_prev, g_t) + 1);
}

std::optional<double> growth_rate(const std::vector<UserId>& g_prev,
                                  const std::vector<UserId>& g_t) {
  if (g_prev.empty()) return std::nullopt;
  return double(g_t.size()) / double(g_prev.size());
}

SustainabilitySeries build_series(const SocialGroup& group, const BetaTable& beta,
                                  double epsilon) {
  SustainabilitySeries series;
  series.group_id = group.group_id;
  const std::size_t slices = group.snapshots.size();
  series.td.assign(slices, std::nullopt);
  series.ms.assign(slices, std::nullopt);
  series.gr.assign(slices, std::nullopt);

  for (std::size_t t = 0; t < slices; ++t) {
    const std::vector<UserId>& g_t = group.snapshots[t];
    if (!g_t.empty()) series.td[t] = topic_divergence(g_t, beta, int(t), epsilon);
    if (t == 0) continue;
    const std::vector<UserId>& g_prev = group.snapshots[t - 1];
    series.ms[t] = membership_stability(g_prev, g_t);
    if (!g_prev.empty() && !g_t.empty()) series.gr[t] = growth_rate(g_prev, g_t);
  }
  series.mean_td = mean_defined(series.td);
  series.mean_ms = mean_defined(series.ms);
  series.mean_gr = mean_defined(series.gr);
  return series;
}

}  // namespace groupdyn
