#include "groupdyn/topics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

#include "groupdyn/io_util.hpp"
#include "groupdyn/log.hpp"

namespace groupdyn {

const std::vector<double>* BetaTable::find(const UserId& user, int slice) const {
  auto it = rows.find({user, slice});
  return it == rows.end() ? nullptr : &it->second;
}

namespace {

struct SliceDocs {
  std::vector<UserId> users;            // sorted
  std::vector<std::vector<int>> words;  // word ids per document
  std::size_t token_count = 0;
};

SliceDocs collect_docs(const Corpus& corpus, int slice, const std::map<std::string, int>& word_id) {
  std::map<UserId, std::vector<int>> by_user;
  for (const auto& post : corpus.posts) {
    if (corpus.slice_of(post.timestamp) != slice) continue;
    for (const auto& token : post.tokens) {
      auto it = word_id.find(token);
      if (it != word_id.end()) by_user[post.author].push_back(it->second);
    }
  }
  SliceDocs docs;
  for (auto& [user, words] : by_user) {
    if (words.empty()) continue;
    docs.token_count += words.size();
    docs.users.push_back(user);
    docs.words.push_back(std::move(words));
  }
  return docs;
}

}  // namespace

TopicModelState fit_topics(const Corpus& corpus, const TopicModelParams& params) {
  if (params.topic_count < 1) throw std::invalid_argument("topic_count must be >= 1");
  if (params.iterations < 1) throw std::invalid_argument("iterations must be >= 1");

  std::set<std::string> token_set;
  for (const auto& post : corpus.posts) token_set.insert(post.tokens.begin(), post.tokens.end());
  if (token_set.empty())
    throw std::runtime_error("corpus has no vocabulary tokens; check the lexicon");

  TopicModelState state;
  state.topic_count = params.topic_count;
  state.vocab.assign(token_set.begin(), token_set.end());
  state.beta.topic_count = params.topic_count;
  std::map<std::string, int> word_id;
  for (std::size_t i = 0; i < state.vocab.size(); ++i) word_id.emplace(state.vocab[i], int(i));

  const int K = params.topic_count;
  const std::size_t Ks = std::size_t(K);
  const std::size_t V = state.vocab.size();
  const double alpha = params.effective_alpha();
  const double eta_mass = params.eta * double(V);  // constant per-topic prior mass
  const double lambda = params.chain_lambda;

  // slice 0 chains off the uniform word distribution, which reduces its
  // prior to the plain symmetric eta
  std::vector<std::vector<double>> prev_phi(Ks, std::vector<double>(V, 1.0 / double(V)));
  state.phi.reserve(std::size_t(corpus.slice_count));

  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int accum_from =
      std::max(params.burn_in, params.iterations - params.sample_window);  // 0-based iteration

  for (int t = 0; t < corpus.slice_count; ++t) {
    SliceDocs docs = collect_docs(corpus, t, word_id);
    if (docs.token_count == 0) {
      state.phi.push_back(prev_phi);  // carry the estimate forward
      continue;
    }

    std::vector<std::vector<double>> prior(Ks, std::vector<double>(V));
    for (int k = 0; k < K; ++k) {
      for (std::size_t w = 0; w < V; ++w) {
        prior[std::size_t(k)][w] =
            (1.0 - lambda) * params.eta + lambda * eta_mass * prev_phi[std::size_t(k)][w];
      }
    }

    const std::size_t D = docs.words.size();
    std::vector<std::vector<int>> z(D);
    std::vector<std::vector<double>> n_dk(D, std::vector<double>(Ks, 0.0));
    std::vector<std::vector<double>> n_kw(Ks, std::vector<double>(V, 0.0));
    std::vector<double> n_k(Ks, 0.0);
    for (std::size_t d = 0; d < D; ++d) {
      z[d].resize(docs.words[d].size());
      for (std::size_t i = 0; i < docs.words[d].size(); ++i) {
        const int k = int(rng() % std::uint64_t(K));
        z[d][i] = k;
        n_dk[d][std::size_t(k)] += 1.0;
        n_kw[std::size_t(k)][std::size_t(docs.words[d][i])] += 1.0;
        n_k[std::size_t(k)] += 1.0;
      }
    }

    std::vector<std::vector<double>> theta_sum(D, std::vector<double>(Ks, 0.0));
    std::vector<std::vector<double>> phi_sum(Ks, std::vector<double>(V, 0.0));
    int samples = 0;
    std::vector<double> weights(Ks);

    for (int iter = 0; iter < params.iterations; ++iter) {
      for (std::size_t d = 0; d < D; ++d) {
        for (std::size_t i = 0; i < docs.words[d].size(); ++i) {
          const std::size_t w = std::size_t(docs.words[d][i]);
          const std::size_t old_k = std::size_t(z[d][i]);
          n_dk[d][old_k] -= 1.0;
          n_kw[old_k][w] -= 1.0;
          n_k[old_k] -= 1.0;
          double total = 0.0;
          for (int k = 0; k < K; ++k) {
            const std::size_t ks = std::size_t(k);
            weights[ks] = (n_dk[d][ks] + alpha) * (n_kw[ks][w] + prior[ks][w]) /
                          (n_k[ks] + eta_mass);
            total += weights[ks];
          }
          double draw = unit(rng) * total;
          int new_k = K - 1;
          for (int k = 0; k < K; ++k) {
            draw -= weights[std::size_t(k)];
            if (draw <= 0.0) {
              new_k = k;
              break;
            }
          }
          z[d][i] = new_k;
          n_dk[d][std::size_t(new_k)] += 1.0;
          n_kw[std::size_t(new_k)][w] += 1.0;
          n_k[std::size_t(new_k)] += 1.0;
        }
      }
      if (iter >= accum_from) {
        ++samples;
        for (std::size_t d = 0; d < D; ++d) {
          const double len = double(docs.words[d].size());
          for (int k = 0; k < K; ++k) {
            theta_sum[d][std::size_t(k)] +=
                (n_dk[d][std::size_t(k)] + alpha) / (len + double(K) * alpha);
          }
        }
        for (int k = 0; k < K; ++k) {
          const std::size_t ks = std::size_t(k);
          for (std::size_t w = 0; w < V; ++w) {
            phi_sum[ks][w] += (n_kw[ks][w] + prior[ks][w]) / (n_k[ks] + eta_mass);
          }
        }
      }
    }
    if (samples == 0) samples = 1;  // unreachable with validated params

    for (std::size_t d = 0; d < D; ++d) {
      std::vector<double> beta(Ks);
      double sum = 0.0;
      for (int k = 0; k < K; ++k) {
        beta[std::size_t(k)] = theta_sum[d][std::size_t(k)] / double(samples);
        sum += beta[std::size_t(k)];
      }
      for (double& b : beta) b /= sum;
      state.beta.rows.emplace(std::make_pair(docs.users[d], t), std::move(beta));
    }
    std::vector<std::vector<double>> phi(Ks, std::vector<double>(V));
    for (int k = 0; k < K; ++k) {
      const std::size_t ks = std::size_t(k);
      double sum = 0.0;
      for (std::size_t w = 0; w < V; ++w) sum += phi_sum[ks][w];
      for (std::size_t w = 0; w < V; ++w) phi[ks][w] = phi_sum[ks][w] / sum;
    }
    state.phi.push_back(phi);
    prev_phi = std::move(phi);
    log_debug("fit slice " + std::to_string(t) + ": " + std::to_string(D) + " documents, " +
              std::to_string(docs.token_count) + " tokens");
  }
  return state;
}

BetaTable load_topics(const std::string& path, int slice_count) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read topic provider file " + path);
  BetaTable table;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells = split_line(line, ',');
    if (first) {
      first = false;
      if (cells.size() >= 3 && cells[0] == "user") continue;  // header row
    }
    if (cells.size() < 3)
      throw std::runtime_error("topic provider line " + std::to_string(lineno) +
                               ": expected user,slice,p1,...,pK");
    const int K = int(cells.size()) - 2;
    if (table.topic_count == 0) {
      table.topic_count = K;
    } else if (K != table.topic_count) {
      throw std::runtime_error("topic provider line " + std::to_string(lineno) +
                               ": inconsistent topic count");
    }
    int slice = 0;
    try {
      std::size_t used = 0;
      slice = std::stoi(cells[1], &used);
      if (used != cells[1].size()) throw std::invalid_argument(cells[1]);
    } catch (const std::exception&) {
      throw std::runtime_error("topic provider line " + std::to_string(lineno) +
                               ": bad slice index '" + cells[1] + "'");
    }
    if (slice < 0 || slice >= slice_count)
      throw std::runtime_error("topic provider line " + std::to_string(lineno) +
                               ": slice index " + std::to_string(slice) + " outside [0, " +
                               std::to_string(slice_count) + ")");
    auto probs = std::vector<double>(std::size_t(K));
    double sum = 0.0;
    for (int i = 0; i < K; ++i) {
      try {
        std::size_t used = 0;
        probs[std::size_t(i)] = std::stod(cells[std::size_t(i) + 2], &used);
        if (used != cells[std::size_t(i) + 2].size())
          throw std::invalid_argument(cells[std::size_t(i) + 2]);
      } catch (const std::exception&) {
        throw std::runtime_error("topic provider line " + std::to_string(lineno) +
                                 ": bad probability '" + cells[std::size_t(i) + 2] + "'");
      }
      if (probs[std::size_t(i)] < 0.0)
        throw std::runtime_error("topic provider line " + std::to_string(lineno) +
                                 ": negative probability");
      sum += probs[std::size_t(i)];
    }
    if (std::abs(sum - 1.0) > 1e-6)
      throw std::runtime_error("topic provider line " + std::to_string(lineno) +
                               ": probabilities sum to " + fmt_double(sum));
    for (double& p : probs) p /= sum;
    if (!table.rows.emplace(std::make_pair(cells[0], slice), std::move(probs)).second)
      throw std::runtime_error("topic provider line " + std::to_string(lineno) +
                               ": duplicate entry for user '" + cells[0] + "' slice " +
                               std::to_string(slice));
  }
  if (table.rows.empty()) throw std::runtime_error("topic provider file has no rows: " + path);
  return table;
}

std::optional<std::vector<double>> group_distribution(const std::vector<UserId>& g_t,
                                                      const BetaTable& beta, int slice) {
  std::vector<double> sum;
  int present = 0;
  for (const auto& user : g_t) {
    const std::vector<double>* row = beta.find(user, slice);
    if (!row) continue;
    if (sum.empty()) sum.assign(row->size(), 0.0);
    for (std::size_t i = 0; i < row->size(); ++i) sum[i] += (*row)[i];
    ++present;
  }
  if (present == 0) return std::nullopt;
  for (double& v : sum) v /= double(present);
  return sum;
}

double kl_divergence(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("KL arguments differ in length");
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
    kl += p[i] * std::log(p[i] / q[i]);
  }
  return kl;
}

double smoothed_kl(const std::vector<double>& p, const std::vector<double>& q, double epsilon) {
  if (p.size() != q.size()) throw std::invalid_argument("KL arguments differ in length");
  const double denom = 1.0 + epsilon * double(p.size());
  std::vector<double> ps(p.size()), qs(q.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    ps[i] = (p[i] + epsilon) / denom;
    qs[i] = (q[i] + epsilon) / denom;
  }
  return kl_divergence(ps, qs);
}

double topic_divergence(const std::vector<std::vector<double>>& member_betas, double epsilon) {
  if (member_betas.empty()) throw std::invalid_argument("topic divergence needs members");
  const auto& first = member_betas.front();
  const bool all_same = std::all_of(member_betas.begin(), member_betas.end(),
                                    [&](const std::vector<double>& b) { return b == first; });
  if (all_same) return 0.0;  // mean equals every member, each KL term vanishes
  std::vector<double> group(first.size(), 0.0);
  for (const auto& beta : member_betas) {
    for (std::size_t i = 0; i < group.size(); ++i) group[i] += beta[i];
  }
  for (double& v : group) v /= double(member_betas.size());
  double td = 0.0;
  // each term is mathematically >= 0; the clamp strips rounding noise when
  // a member sits within a few ulps of the mean
  for (const auto& beta : member_betas) td += std::max(0.0, smoothed_kl(group, beta, epsilon));
  return td / double(member_betas.size());
}

std::optional<double> topic_divergence(const std::vector<UserId>& g_t, const BetaTable& beta,
                                       int slice, double epsilon) {
  std::vector<std::vector<double>> member_betas;
  for (const auto& user : g_t) {
    const std::vector<double>* row = beta.find(user, slice);
    if (row) member_betas.push_back(*row);
  }
  if (member_betas.empty()) return std::nullopt;
  return topic_divergence(member_betas, epsilon);
}

std::vector<TopWord> top_words(const TopicModelState& state, int per_topic) {
  std::vector<TopWord> out;
  for (std::size_t t = 0; t < state.phi.size(); ++t) {
    for (int k = 0; k < state.topic_count; ++k) {
      const auto& row = state.phi[t][std::size_t(k)];
      std::vector<int> order(row.size());
      for (std::size_t w = 0; w < row.size(); ++w) order[w] = int(w);
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (row[std::size_t(a)] != row[std::size_t(b)]) return row[std::size_t(a)] > row[std::size_t(b)];
        return a < b;
      });
      const int limit = std::min<int>(per_topic, int(order.size()));
      for (int r = 0; r < limit; ++r) {
        out.push_back({int(t), k, r + 1, state.vocab[std::size_t(order[std::size_t(r)])],
                       row[std::size_t(order[std::size_t(r)])]});
      }
    }
  }
  return out;
}

}  // namespace groupdyn
