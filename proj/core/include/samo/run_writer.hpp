#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "samo/samo.hpp"

namespace samo::driver {

/// Version of the metrics.json layout.
inline constexpr int metrics_schema_version = 1;

/// Single owner of a run directory. Round artifacts are written as soon as a
/// round completes, so an interrupted run leaves everything finished so far.
///
/// Layout:
///   config.json                verbatim configuration text
///   config.resolved.json       configuration with every default filled in
///   samples_round_<j>.csv      expensive samples added in round j
///   front_round_<j>.csv        surrogate Pareto approximation of round j
///   surrogate_round_<j>.json   trained surrogate of round j
///   samples.csv                all expensive samples
///   final_front.csv            non-dominated expensive samples
///   metrics.json               per-round and final metrics
///   projection_matrix.csv      problem artifact (quarter-car benchmark)
class RunWriter {
 public:
  RunWriter(std::filesystem::path directory, const problems::Problem& problem,
            bool save_surrogates = true);

  const std::filesystem::path& directory() const noexcept { return directory_; }

  void write_config(const std::string& verbatim, const nlohmann::json& resolved) const;

  /// Observer for samo_run.
  void on_round(const RoundRecord& round, const Dataset& data);

  void finish(const RunRecord& record);

  /// Observer bound to this writer.
  RoundObserver observer();

 private:
  void write_metrics(const RunRecord* record) const;

  std::filesystem::path directory_;
  const problems::Problem& problem_;
  bool save_surrogates_;
  nlohmann::json rounds_ = nlohmann::json::array();
  std::size_t evaluations_ = 0;
};

/// Header "round,x_1..x_N,f_1..f_K".
std::vector<std::string> point_header(std::size_t n, std::size_t k);

nlohmann::json round_metrics(const RoundRecord& round);

}  // namespace samo::driver
