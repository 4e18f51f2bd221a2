#include "groupdyn/config.hpp"

#include <sstream>
#include <stdexcept>

#include "groupdyn/io_util.hpp"

namespace groupdyn {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::int64_t to_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config key '" + key + "': expected integer, got '" + value + "'");
  }
}

std::uint64_t to_uint(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    std::uint64_t v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config key '" + key + "': expected unsigned integer, got '" + value +
                             "'");
  }
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("config key '" + key + "': expected number, got '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw std::runtime_error("config key '" + key + "': expected true/false, got '" + value + "'");
}

}  // namespace

PipelineConfig PipelineConfig::parse(const std::string& text) {
  PipelineConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(stripped.substr(0, eq));
    std::string value = trim(stripped.substr(eq + 1));

    if (key == "posts_path") cfg.posts_path = value;
    else if (key == "profiles_path") cfg.profiles_path = value;
    else if (key == "followers_path") cfg.followers_path = value;
    else if (key == "lexicon_path") cfg.lexicon_path = value;
    else if (key == "gazetteer_path") cfg.gazetteer_path = value;
    else if (key == "expertise_lexicon_path") cfg.expertise_lexicon_path = value;
    else if (key == "topic_provider_path") cfg.topic_provider_path = value;
    else if (key == "event_nation") cfg.event_nation = value;
    else if (key == "slice_width_seconds") cfg.slice_width_seconds = to_int(key, value);
    else if (key == "cluster_target_size") cfg.cluster_target_size = to_double(key, value);
    else if (key == "cluster_weighted") cfg.cluster_weighted = to_bool(key, value);
    else if (key == "min_group_size") cfg.min_group_size = int(to_int(key, value));
    else if (key == "min_active_slices") cfg.min_active_slices = int(to_int(key, value));
    else if (key == "topic_count") cfg.topic_count = int(to_int(key, value));
    else if (key == "gibbs_iterations") cfg.gibbs_iterations = int(to_int(key, value));
    else if (key == "gibbs_burn_in") cfg.gibbs_burn_in = int(to_int(key, value));
    else if (key == "gibbs_sample_window") cfg.gibbs_sample_window = int(to_int(key, value));
    else if (key == "alpha") cfg.alpha = value == "auto" ? -1.0 : to_double(key, value);
    else if (key == "eta") cfg.eta = to_double(key, value);
    else if (key == "chain_lambda") cfg.chain_lambda = to_double(key, value);
    else if (key == "kl_epsilon") cfg.kl_epsilon = to_double(key, value);
    else if (key == "seed") cfg.seed = to_uint(key, value);
    else throw std::runtime_error("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }

  if (cfg.slice_width_seconds <= 0) throw std::runtime_error("slice_width_seconds must be positive");
  if (cfg.cluster_target_size <= 0) throw std::runtime_error("cluster_target_size must be positive");
  if (cfg.min_group_size < 1) throw std::runtime_error("min_group_size must be >= 1");
  if (cfg.min_active_slices < 0) throw std::runtime_error("min_active_slices must be >= 0");
  if (cfg.topic_count < 1) throw std::runtime_error("topic_count must be >= 1");
  if (cfg.gibbs_iterations < 1) throw std::runtime_error("gibbs_iterations must be >= 1");
  if (cfg.gibbs_burn_in < 0 || cfg.gibbs_burn_in >= cfg.gibbs_iterations)
    throw std::runtime_error("gibbs_burn_in must lie in [0, gibbs_iterations)");
  if (cfg.gibbs_sample_window < 1) throw std::runtime_error("gibbs_sample_window must be >= 1");
  if (cfg.eta <= 0) throw std::runtime_error("eta must be positive");
  if (cfg.chain_lambda < 0 || cfg.chain_lambda > 1)
    throw std::runtime_error("chain_lambda must lie in [0, 1]");
  if (cfg.kl_epsilon <= 0) throw std::runtime_error("kl_epsilon must be positive");
  return cfg;
}

PipelineConfig PipelineConfig::load(const std::string& path) {
  return parse(read_file(path));
}

std::string PipelineConfig::dump() const {
  std::ostringstream out;
  out << "posts_path = " << posts_path << "\n";
  out << "profiles_path = " << profiles_path << "\n";
  out << "followers_path = " << followers_path << "\n";
  out << "lexicon_path = " << lexicon_path << "\n";
  out << "gazetteer_path = " << gazetteer_path << "\n";
  out << "expertise_lexicon_path = " << expertise_lexicon_path << "\n";
  out << "topic_provider_path = " << topic_provider_path << "\n";
  out << "event_nation = " << event_nation << "\n";
  out << "slice_width_seconds = " << slice_width_seconds << "\n";
  out << "cluster_target_size = " << fmt_double(cluster_target_size) << "\n";
  out << "cluster_weighted = " << (cluster_weighted ? "true" : "false") << "\n";
  out << "min_group_size = " << min_group_size << "\n";
  out << "min_active_slices = " << min_active_slices << "\n";
  out << "topic_count = " << topic_count << "\n";
  out << "gibbs_iterations = " << gibbs_iterations << "\n";
  out << "gibbs_burn_in = " << gibbs_burn_in << "\n";
  out << "gibbs_sample_window = " << gibbs_sample_window << "\n";
  out << "alpha = " << (alpha < 0 ? std::string("auto") : fmt_double(alpha)) << "\n";
  out << "eta = " << fmt_double(eta) << "\n";
  out << "chain_lambda = " << fmt_double(chain_lambda) << "\n";
  out << "kl_epsilon = " << fmt_double(kl_epsilon) << "\n";
  out << "seed = " << seed << "\n";
  return out.str();
}

void PipelineConfig::save(const std::string& path) const {
  atomic_write(path, dump());
}

}  // namespace groupdyn
