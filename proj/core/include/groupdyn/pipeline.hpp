#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "groupdyn/config.hpp"

namespace groupdyn {

// Raised when a stage's input artifact is absent from the out dir.
struct MissingArtifact : std::runtime_error {
  MissingArtifact(const std::string& artifact, const std::string& producer_stage);
  std::string artifact;
  std::string producer_stage;
};

// Stage artifact filenames within the out dir.
namespace artifact {
inline constexpr const char* slices = "slices.csv";
inline constexpr const char* users = "users.csv";
inline constexpr const char* groups = "groups.csv";
inline constexpr const char* snapshots = "snapshots.csv";
inline constexpr const char* cohesion = "cohesion.csv";
inline constexpr const char* identity = "identity.csv";
inline constexpr const char* beta = "beta.csv";
inline constexpr const char* top_words = "topic_top_words.csv";
inline constexpr const char* series = "sustainability_series.csv";
inline constexpr const char* summary = "sustainability_summary.csv";
inline constexpr const char* correlation = "correlation.csv";
inline constexpr const char* report_csv = "report.csv";
inline constexpr const char* report_txt = "report.txt";
}  // namespace artifact

void run_ingest(const PipelineConfig& cfg, const std::filesystem::path& out);
void run_cluster(const PipelineConfig& cfg, const std::filesystem::path& out);
void run_cohesion(const PipelineConfig& cfg, const std::filesystem::path& out);
void run_identity(const PipelineConfig& cfg, const std::filesystem::path& out);
void run_topics(const PipelineConfig& cfg, const std::filesystem::path& out);
void run_sustainability(const PipelineConfig& cfg, const std::filesystem::path& out);
void run_correlate(const PipelineConfig& cfg, const std::filesystem::path& out);
// extra_correlations: correlation.csv files from other datasets folded into
// the reciprocal-vs-undirected binomial test.
void run_report(const PipelineConfig& cfg, const std::filesystem::path& out,
                const std::vector<std::string>& extra_correlations = {});

// ingest -> cluster -> cohesion -> identity -> topics -> sustainability ->
// correlate -> report, in order.
void run_full(const PipelineConfig& cfg, const std::filesystem::path& out);

}  // namespace groupdyn
