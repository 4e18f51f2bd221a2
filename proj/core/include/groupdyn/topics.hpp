#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "groupdyn/corpus.hpp"

namespace groupdyn {

struct TopicModelParams {
  int topic_count = 3;
  int iterations = 500;
  int burn_in = 100;
  int sample_window = 100;  // posterior mean over the last N iterations
  double alpha = -1.0;      // < 0 means 50/K
  double eta = 0.01;
  double chain_lambda = 0.5;  // weight of the previous slice's estimate in the prior
  std::uint64_t seed = 1;

  double effective_alpha() const { return alpha < 0 ? 50.0 / topic_count : alpha; }
};

// beta_u^t for every (user, slice) with at least one vocabulary token.
struct BetaTable {
  int topic_count = 0;
  std::map<std::pair<UserId, int>, std::vector<double>> rows;

  const std::vector<double>* find(const UserId& user, int slice) const;
};

struct TopicModelState {
  int topic_count = 0;
  std::vector<std::string> vocab;                     // word id -> token
  std::vector<std::vector<std::vector<double>>> phi;  // [slice][topic][word]
  BetaTable beta;
};

// Per-slice collapsed Gibbs sampling; slice t's topic-word prior is
// (1-lambda)*eta + lambda*(eta*V)*phi[t-1], so the chain is centered on the
// previous slice's estimate. Deterministic given params.seed. Throws when
// the corpus has no vocabulary tokens at all; slices with zero tokens yield
// no distributions and carry phi forward.
TopicModelState fit_topics(const Corpus& corpus, const TopicModelParams& params);

// Provider format: CSV "user,slice,p1,...,pK". Throws on rows that do not
// sum to 1 (tolerance 1e-6, then renormalized), duplicate (user,slice),
// negative entries, or slice indices outside [0, slice_count).
BetaTable load_topics(const std::string& path, int slice_count);

// Component-wise mean over the members of g_t that have a distribution;
// nullopt when none do.
std::optional<std::vector<double>> group_distribution(const std::vector<UserId>& g_t,
                                                      const BetaTable& beta, int slice);

double kl_divergence(const std::vector<double>& p, const std::vector<double>& q);

// Both arguments epsilon-smoothed and renormalized before the logarithms.
double smoothed_kl(const std::vector<double>& p, const std::vector<double>& q, double epsilon);

// Mean over member distributions of KL(group || member).
double topic_divergence(const std::vector<std::vector<double>>& member_betas, double epsilon);

std::optional<double> topic_divergence(const std::vector<UserId>& g_t, const BetaTable& beta,
                                       int slice, double epsilon);

struct TopWord {
  int slice = 0;
  int topic = 0;
  int rank = 0;
  std::string word;
  double probability = 0;
};

std::vector<TopWord> top_words(const TopicModelState& state, int per_topic = 10);

}  // namespace groupdyn
