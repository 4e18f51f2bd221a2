#include <benchmark/benchmark.h>

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "groupdyn/inference.hpp"

namespace {

// Worst case of the 128-bit integer path: the full coefficient sweep at the
// largest n the path accepts.
void BM_BinomialExactTail(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(groupdyn::binomial_one_sided(127, 64));
  }
}
BENCHMARK(BM_BinomialExactTail);

void BM_BinomialLogGammaTail(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(groupdyn::binomial_one_sided(1000, 520));
  }
}
BENCHMARK(BM_BinomialLogGammaTail);

void BM_Pearson(benchmark::State& state) {
  const int n = int(state.range(0));
  std::mt19937_64 rng(29);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> xs, ys;
  xs.reserve(std::size_t(n));
  ys.reserve(std::size_t(n));
  for (int i = 0; i < n; ++i) {
    const double x = noise(rng);
    xs.push_back(x);
    ys.push_back(0.5 * x + noise(rng));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(groupdyn::pearson(xs, ys));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Pearson)->Arg(1000)->Arg(100000);

// Full 13x3 correlation table with pairwise deletion over many groups.
void BM_Correlate(benchmark::State& state) {
  const int groups = int(state.range(0));
  std::mt19937_64 rng(31);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::bernoulli_distribution missing(0.1);
  std::map<int, groupdyn::FeatureVector> features;
  std::map<int, groupdyn::MeasureVector> measures;
  for (int g = 0; g < groups; ++g) {
    groupdyn::FeatureVector fv;
    for (auto& slot : fv) {
      if (!missing(rng)) slot = noise(rng);
    }
    groupdyn::MeasureVector mv;
    for (auto& slot : mv) {
      if (!missing(rng)) slot = noise(rng);
    }
    features[g] = fv;
    measures[g] = mv;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(groupdyn::correlate(features, measures));
  }
  state.SetItemsProcessed(state.iterations() * groups);
}
BENCHMARK(BM_Correlate)->Arg(40)->Arg(400);

}  // namespace
