#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "samo/problem.hpp"
#include "samo/samo.hpp"
#include "samo/study.hpp"

namespace samo::cli {

struct OutputOptions {
  std::string directory = "runs/latest";
  bool save_surrogates = true;
  bool verbose = false;
  friend bool operator==(const OutputOptions&, const OutputOptions&) = default;
};

struct StudySettings {
  std::vector<std::size_t> sizes{5, 10, 20, 30};
  std::vector<driver::SurrogateKind> surrogates{driver::SurrogateKind::mlp, driver::SurrogateKind::rbf};
  std::size_t repetitions = 1;
  friend bool operator==(const StudySettings&, const StudySettings&) = default;
};

struct RunConfig {
  std::string problem = "mbs";
  /// 0 keeps the problem's default dimension.
  std::size_t dimension = 0;
  problems::QuarterCarBenchmark::Options mbs{};
  driver::SamoConfig samo{};
  OutputOptions output{};
  StudySettings study{};

  /// Checks everything that can be checked without evaluating anything.
  void validate() const;
  problems::Problem make_problem() const;
  driver::StudyOptions study_options() const;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses a configuration document. Every key is optional; unknown keys and
/// wrongly typed values raise ConfigError naming the offending field.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);

/// Fully resolved document; parse_config(to_json(c)) == c.
nlohmann::json to_json(const RunConfig& config);

std::string read_text(const std::filesystem::path& path);

}  // namespace samo::cli
