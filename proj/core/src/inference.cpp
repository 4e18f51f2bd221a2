#include "groupdyn/inference.hpp"

#include <cmath>
#include <stdexcept>

namespace groupdyn {

std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("pearson arguments differ in length");
  const std::size_t n = xs.size();
  if (n < 3) return std::nullopt;
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= double(n);
  mean_y /= double(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mean_x;
    const double dy = ys[i] - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

double binomial_one_sided(int n, int k) {
  if (n < 0) throw std::invalid_argument("binomial_one_sided needs n >= 0");
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  if (n <= 127) {  // tail sum stays below 2^128
    unsigned __int128 coeff = 1;  // C(n,0)
    unsigned __int128 tail = 0;
    for (int i = 0; i <= n; ++i) {
      if (i >= k) tail += coeff;
      // C(n,i+1) = C(n,i)*(n-i)/(i+1); the naive product overflows near the
      // central coefficient once n >= 126, so split on the quotient/remainder.
      // (i+1) | r*num because the result is an integer and q*num already is.
      const auto num = (unsigned __int128)(n - i);
      const auto den = (unsigned __int128)(i + 1);
      const unsigned __int128 q = coeff / den;
      const unsigned __int128 r = coeff % den;
      coeff = q * num + r * num / den;
    }
    return double(tail) * std::ldexp(1.0, -n);
  }
  double p = 0.0;
  const double log_half = std::log(0.5);
  for (int i = k; i <= n; ++i) {
    const double log_coeff =
        std::lgamma(double(n) + 1.0) - std::lgamma(double(i) + 1.0) - std::lgamma(double(n - i) + 1.0);
    p += std::exp(log_coeff + double(n) * log_half);
  }
  return std::min(p, 1.0);
}

int feature_index(std::string_view name) {
  for (int i = 0; i < kFeatureCount; ++i) {
    if (name == kFeatureNames[std::size_t(i)]) return i;
  }
  return -1;
}

int measure_index(std::string_view name) {
  for (int i = 0; i < kMeasureCount; ++i) {
    if (name == kMeasureNames[std::size_t(i)]) return i;
  }
  return -1;
}

const CorrelationCell& CorrelationTable::cell(std::string_view feature,
                                              std::string_view measure) const {
  const int f = feature_index(feature);
  const int m = measure_index(measure);
  if (f < 0) throw std::out_of_range("unknown feature: " + std::string(feature));
  if (m < 0) throw std::out_of_range("unknown measure: " + std::string(measure));
  return cells[std::size_t(f)][std::size_t(m)];
}

CorrelationTable correlate(const std::map<int, FeatureVector>& features,
                           const std::map<int, MeasureVector>& measures) {
  CorrelationTable table;
  for (int f = 0; f < kFeatureCount; ++f) {
    for (int m = 0; m < kMeasureCount; ++m) {
      std::vector<double> xs, ys;
      for (const auto& [group_id, fv] : features) {
        auto mit = measures.find(group_id);
        if (mit == measures.end()) continue;
        const auto& x = fv[std::size_t(f)];
        const auto& y = mit->second[std::size_t(m)];
        if (!x || !y) continue;  // pairwise deletion
        xs.push_back(*x);
        ys.push_back(*y);
      }
      CorrelationCell& cell = table.cells[std::size_t(f)][std::size_t(m)];
      cell.n = int(xs.size());
      cell.r = pearson(xs, ys);
      cell.bold = cell.r && std::abs(*cell.r) > 0.25;
    }
  }
  return table;
}

BinomialTestResult reciprocal_vs_undirected_test(std::span<const CorrelationTable> tables) {
  constexpr const char* kStatistics[4] = {"density", "transitivity", "avg_clustering",
                                          "avg_shortest_path"};
  BinomialTestResult result;
  for (const auto& table : tables) {
    for (const char* stat : kStatistics) {
      const auto& rec =
          table.cell(std::string("reciprocal_") + stat, "topic_divergence");
      const auto& und =
          table.cell(std::string("undirected_") + stat, "topic_divergence");
      if (!rec.r || !und.r) {
        ++result.missing;
        continue;
      }
      ++result.n;
      if (std::abs(*rec.r) > std::abs(*und.r)) ++result.k;
    }
  }
  result.p = binomial_one_sided(result.n, result.k);
  return result;
}

std::vector<HypothesisCheck> hypothesis_report(const CorrelationTable& table) {
  struct Row {
    int hypothesis;
    const char* feature;
    char sign;
  };
  constexpr Row kRows[] = {
      {1, "directed_density", '-'},
      {1, "reciprocal_density", '-'},
      {1, "undirected_density", '-'},
      {1, "reciprocal_avg_shortest_path", '+'},
      {1, "undirected_avg_shortest_path", '+'},
      {2, "regional_entropy", '+'},
      {2, "expertise_entropy", '+'},
      {2, "aid_entropy", '+'},
  };
  std::vector<HypothesisCheck> checks;
  checks.reserve(std::size(kRows));
  for (const Row& row : kRows) {
    HypothesisCheck check;
    check.hypothesis = row.hypothesis;
    check.feature = row.feature;
    check.expected_sign = row.sign;
    check.r = table.cell(row.feature, "topic_divergence").r;
    check.pass = check.r && (row.sign == '-' ? *check.r < 0.0 : *check.r > 0.0);
    checks.push_back(std::move(check));
  }
  return checks;
}

}  // namespace groupdyn
