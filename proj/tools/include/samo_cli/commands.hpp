#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "samo_cli/config.hpp"

namespace samo::cli {

/// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

/// Flags shared by run, study and evaluate. Values given here override the
/// configuration file.
struct CommonOptions {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> jobs;
  bool verbose = false;
};

/// Reads, overrides and validates the configuration, and returns it together
/// with its verbatim text (empty when no file was given).
std::pair<RunConfig, std::string> load_config(const CommonOptions& options);

int cmd_run(const CommonOptions& options, std::ostream& out, std::ostream& err);

/// Writes rounds_combined.csv (every round's samples and surrogate front,
/// tagged by round and kind) and final_sample_front.csv into `out_dir`
/// (default: the run directory).
int cmd_front(const std::filesystem::path& run_dir, const std::optional<std::filesystem::path>& out_dir,
              std::ostream& out, std::ostream& err);

int cmd_study(const CommonOptions& options, std::ostream& out, std::ostream& err);

/// Evaluates one point (comma-separated coordinates; empty means the box
/// centre) and prints the objectives as CSV.
int cmd_evaluate(const CommonOptions& options, const std::string& point, std::ostream& out,
                 std::ostream& err);

/// Full command line entry point.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace samo::cli
