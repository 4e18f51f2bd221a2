#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "groupdyn/corpus.hpp"
#include "groupdyn/topics.hpp"

namespace {

groupdyn::Corpus synthetic_corpus(int users, int slices, int posts_per_slice, int vocab_words,
                                  std::uint64_t seed) {
  groupdyn::Corpus corpus;
  corpus.start_midnight = 0;
  corpus.slice_count = slices;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> word(0, vocab_words - 1);
  int post_id = 0;
  for (int u = 0; u < users; ++u) {
    const groupdyn::UserId id = "u" + std::to_string(u);
    corpus.users.insert(id);
    for (int s = 0; s < slices; ++s) {
      for (int p = 0; p < posts_per_slice; ++p) {
        groupdyn::InteractionRecord rec;
        rec.post_id = std::to_string(post_id++);
        rec.author = id;
        rec.timestamp = std::int64_t(s) * 86400 + 60 * p;
        for (int t = 0; t < 6; ++t) rec.tokens.push_back("w" + std::to_string(word(rng)));
        corpus.posts.push_back(std::move(rec));
      }
    }
  }
  return corpus;
}

// Chained per-slice collapsed Gibbs fit; items are token-sweeps.
void BM_GibbsFit(benchmark::State& state) {
  const int users = int(state.range(0));
  const auto corpus = synthetic_corpus(users, 4, 3, 200, 23);
  groupdyn::TopicModelParams params;
  params.topic_count = 3;
  params.iterations = 60;
  params.burn_in = 20;
  params.sample_window = 40;
  params.seed = 11;
  std::int64_t tokens = 0;
  for (const auto& post : corpus.posts) tokens += std::int64_t(post.tokens.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(groupdyn::fit_topics(corpus, params));
  }
  state.SetItemsProcessed(state.iterations() * tokens * params.iterations);
}
BENCHMARK(BM_GibbsFit)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);

std::vector<std::vector<double>> random_distributions(int members, int topics,
                                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> gam(1.0, 1.0);
  std::vector<std::vector<double>> rows;
  rows.reserve(std::size_t(members));
  for (int m = 0; m < members; ++m) {
    std::vector<double> row(std::size_t(topics), 0.0);
    double sum = 0.0;
    for (double& x : row) {
      x = gam(rng);
      sum += x;
    }
    for (double& x : row) x /= sum;
    rows.push_back(std::move(row));
  }
  return rows;
}

void BM_TopicDivergence(benchmark::State& state) {
  const int members = int(state.range(0));
  const auto betas = random_distributions(members, 50, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(groupdyn::topic_divergence(betas, 1e-6));
  }
  state.SetItemsProcessed(state.iterations() * members);
}
BENCHMARK(BM_TopicDivergence)->Arg(10)->Arg(100);

}  // namespace
