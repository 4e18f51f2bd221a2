#include <cstdint>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "groupdyn/config.hpp"
#include "groupdyn/pipeline.hpp"
#include "groupdyn/synth.hpp"

namespace {

using groupdyn::PipelineConfig;

struct StageArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
};

std::shared_ptr<StageArgs> add_stage_options(CLI::App* cmd) {
  auto args = std::make_shared<StageArgs>();
  cmd->add_option("--config", args->config_path, "pipeline config file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", args->out_dir, "artifact directory")->capture_default_str();
  args->seed_opt = cmd->add_option("--seed", args->seed, "override the config seed");
  return args;
}

PipelineConfig load_config(const StageArgs& args) {
  PipelineConfig cfg = PipelineConfig::load(args.config_path);
  if (args.seed_opt->count() > 0) cfg.seed = args.seed;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"analysis pipeline for interaction groups in an event corpus"};
  app.require_subcommand(1);

  struct SimpleStage {
    const char* name;
    const char* help;
    void (*run)(const PipelineConfig&, const std::filesystem::path&);
  };
  const SimpleStage simple_stages[] = {
      {"ingest", "load the corpus and write the slice/user tables", groupdyn::run_ingest},
      {"cohesion", "follower-subgraph statistics per group", groupdyn::run_cohesion},
      {"identity", "identity-class entropies per group", groupdyn::run_identity},
      {"correlate", "feature-vs-measure correlation table", groupdyn::run_correlate},
      {"run", "all stages in order", groupdyn::run_full},
  };
  for (const SimpleStage& s : simple_stages) {
    CLI::App* cmd = app.add_subcommand(s.name, s.help);
    auto args = add_stage_options(cmd);
    cmd->callback([args, run = s.run]() { run(load_config(*args), args->out_dir); });
  }

  {
    CLI::App* cmd = app.add_subcommand("cluster", "interaction-graph clustering into groups");
    auto args = add_stage_options(cmd);
    auto target_size = std::make_shared<double>(0);
    auto min_size = std::make_shared<int>(0);
    auto min_slices = std::make_shared<int>(0);
    CLI::Option* target_opt = cmd->add_option("--target-size", *target_size, "mean group size goal");
    CLI::Option* size_opt = cmd->add_option("--min-group-size", *min_size, "group size filter");
    CLI::Option* slices_opt =
        cmd->add_option("--min-active-slices", *min_slices, "active slice filter");
    cmd->callback([=]() {
      PipelineConfig cfg = load_config(*args);
      if (target_opt->count() > 0) cfg.cluster_target_size = *target_size;
      if (size_opt->count() > 0) cfg.min_group_size = *min_size;
      if (slices_opt->count() > 0) cfg.min_active_slices = *min_slices;
      groupdyn::run_cluster(cfg, args->out_dir);
    });
  }

  {
    CLI::App* cmd = app.add_subcommand("topics", "per-slice topic model, or provider import");
    auto args = add_stage_options(cmd);
    auto topic_count = std::make_shared<int>(0);
    auto iterations = std::make_shared<int>(0);
    auto provider = std::make_shared<std::string>();
    CLI::Option* k_opt = cmd->add_option("--topics", *topic_count, "number of topics");
    CLI::Option* iter_opt = cmd->add_option("--iterations", *iterations, "sampler iterations");
    CLI::Option* provider_opt =
        cmd->add_option("--provider", *provider, "externally computed user,slice,p1..pK CSV")
            ->check(CLI::ExistingFile);
    cmd->callback([=]() {
      PipelineConfig cfg = load_config(*args);
      if (k_opt->count() > 0) cfg.topic_count = *topic_count;
      if (iter_opt->count() > 0) cfg.gibbs_iterations = *iterations;
      if (provider_opt->count() > 0) cfg.topic_provider_path = *provider;
      groupdyn::run_topics(cfg, args->out_dir);
    });
  }

  {
    CLI::App* cmd = app.add_subcommand("sustainability", "per-slice measures and means");
    auto args = add_stage_options(cmd);
    auto epsilon = std::make_shared<double>(0);
    CLI::Option* eps_opt = cmd->add_option("--epsilon", *epsilon, "KL smoothing epsilon");
    cmd->callback([=]() {
      PipelineConfig cfg = load_config(*args);
      if (eps_opt->count() > 0) cfg.kl_epsilon = *epsilon;
      groupdyn::run_sustainability(cfg, args->out_dir);
    });
  }

  {
    CLI::App* cmd =
        app.add_subcommand("report", "correlation matrix, hypothesis checks, binomial test");
    auto args = add_stage_options(cmd);
    auto extras = std::make_shared<std::vector<std::string>>();
    cmd->add_option("--extra-correlation", *extras,
                    "correlation.csv from another dataset, folded into the binomial test")
        ->check(CLI::ExistingFile);
    cmd->callback([=]() { groupdyn::run_report(load_config(*args), args->out_dir, *extras); });
  }

  {
    CLI::App* cmd = app.add_subcommand("synth", "write a synthetic corpus with planted structure");
    auto spec = std::make_shared<groupdyn::SyntheticSpec>();
    auto out_dir = std::make_shared<std::string>();
    cmd->add_option("--out", *out_dir, "directory for the corpus files")->required();
    cmd->add_option("--groups", spec->groups, "planted group count")->capture_default_str();
    cmd->add_option("--members", spec->members_per_group, "members per group")
        ->capture_default_str();
    cmd->add_option("--slices", spec->slices, "time slices")->capture_default_str();
    cmd->add_option("--coherent", spec->coherent_fraction, "topic-coherent fraction")
        ->capture_default_str();
    cmd->add_option("--concentrated", spec->concentrated_fraction,
                    "identity-concentrated fraction")
        ->capture_default_str();
    cmd->add_option("--dense", spec->dense_fraction, "dense-follower fraction")
        ->capture_default_str();
    cmd->add_option("--topics", spec->topic_count, "planted topic count")->capture_default_str();
    cmd->add_option("--seed", spec->seed, "generator seed")->capture_default_str();
    cmd->callback([=]() {
      const groupdyn::SynthResult result = groupdyn::generate_synthetic(*spec, *out_dir);
      std::cout << result.config_path.string() << "\n";
    });
  }

  {
    CLI::App* cmd = app.add_subcommand("config", "print the effective configuration");
    auto config_path = std::make_shared<std::string>();
    auto dump = std::make_shared<bool>(false);
    cmd->add_option("--config", *config_path, "config file to load before printing")
        ->check(CLI::ExistingFile);
    cmd->add_flag("--dump", *dump, "print every key with its effective value");
    cmd->callback([=]() {
      PipelineConfig cfg;
      if (!config_path->empty()) cfg = PipelineConfig::load(*config_path);
      if (*dump || config_path->empty()) std::cout << cfg.dump();
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "groupdyn: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
