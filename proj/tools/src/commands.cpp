#include "samo_cli/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "samo/csv.hpp"
#include "samo/log.hpp"
#include "samo/pareto.hpp"
#include "samo/run_writer.hpp"

namespace samo::cli {

namespace fs = std::filesystem;

std::pair<RunConfig, std::string> load_config(const CommonOptions& options) {
  std::string text;
  RunConfig config;
  if (!options.config.empty()) {
    text = read_text(options.config);
    config = parse_config_text(text);
  }
  if (!options.out.empty()) config.output.directory = options.out;
  if (options.seed) config.samo.seed = *options.seed;
  if (options.jobs) config.samo.jobs = *options.jobs;
  if (options.verbose) config.output.verbose = true;
  config.validate();
  return {std::move(config), std::move(text)};
}

namespace {

void configure_logging(bool verbose, std::ostream& err) {
  log::set_level(verbose ? log::Level::info : log::Level::warning);
  log::set_sink([&err](log::Level level, std::string_view message) {
    static constexpr const char* names[] = {"debug", "info", "warning", "error", "off"};
    err << "[" << names[static_cast<int>(level)] << "] " << message << '\n';
  });
}

std::string describe_round(const driver::RoundRecord& round, std::size_t evaluations) {
  std::ostringstream s;
  s << "round " << round.index << ": " << round.new_samples.size() << " new samples, " << evaluations
    << " evaluations";
  if (round.hausdorff) s << ", h = " << *round.hausdorff;
  if (!round.front.empty()) s << ", front size " << round.front.size();
  return s.str();
}

void write_record(const driver::RunRecord& record, const problems::Problem& problem, const fs::path& dir,
                  bool save_surrogates, const std::string& verbatim, const RunConfig& config) {
  driver::RunWriter writer(dir, problem, save_surrogates);
  writer.write_config(verbatim, to_json(config));
  Dataset so_far;
  for (const auto& round : record.rounds) {
    for (const auto& s : round.new_samples) so_far.add(s);
    writer.on_round(round, so_far);
  }
  writer.finish(record);
}

}  // namespace

int cmd_run(const CommonOptions& options, std::ostream& out, std::ostream& err) {
  RunConfig config;
  std::string text;
  try {
    std::tie(config, text) = load_config(options);
  } catch (const Error& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return exit_usage;
  }
  configure_logging(config.output.verbose, err);
  try {
    const auto problem = config.make_problem();
    driver::RunWriter writer(config.output.directory, problem, config.output.save_surrogates);
    writer.write_config(text.empty() ? to_json(config).dump(2) + "\n" : text, to_json(config));
    auto observer = [&](const driver::RoundRecord& round, const Dataset& data) {
      writer.on_round(round, data);
      out << describe_round(round, data.size()) << std::endl;
    };
    const auto record = driver::samo_run(problem, config.samo, observer);
    writer.finish(record);
    out << "finished: " << driver::to_string(record.termination) << " after " << record.rounds.size()
        << " rounds, " << record.evaluations() << " evaluations, " << record.sample_front.size()
        << " non-dominated samples\n";
    out << "run directory: " << config.output.directory << '\n';
    if (record.termination == driver::Termination::error) {
      err << "run failed: " << record.error << '\n';
      return exit_failure;
    }
    return exit_ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_failure;
  }
}

int cmd_front(const fs::path& run_dir, const std::optional<fs::path>& out_dir, std::ostream& out,
              std::ostream& err) {
  try {
    if (!fs::is_directory(run_dir)) throw IoError("no such run directory: " + run_dir.string());
    const fs::path target = out_dir.value_or(run_dir);
    fs::create_directories(target);

    std::vector<std::string> header;
    csv::Table combined;
    std::vector<std::vector<std::string>> sample_rows;
    std::size_t rounds = 0;
    for (;; ++rounds) {
      const auto tag = std::to_string(rounds);
      const auto samples_path = run_dir / ("samples_round_" + tag + ".csv");
      if (!fs::exists(samples_path)) break;
      auto samples = csv::read(samples_path);
      if (header.empty()) {
        header = samples.header;
        combined.header = header;
        combined.header.insert(combined.header.begin() + 1, "kind");
      } else if (samples.header != header) {
        throw IoError("inconsistent columns in " + samples_path.string());
      }
      for (auto& row : samples.rows) {
        sample_rows.push_back(row);
        row.insert(row.begin() + 1, "sample");
        combined.rows.push_back(std::move(row));
      }
      const auto front_path = run_dir / ("front_round_" + tag + ".csv");
      if (fs::exists(front_path)) {
        auto front = csv::read(front_path);
        if (front.header != header) throw IoError("inconsistent columns in " + front_path.string());
        for (auto& row : front.rows) {
          row.insert(row.begin() + 1, "front");
          combined.rows.push_back(std::move(row));
        }
      }
    }
    if (rounds == 0) throw IoError("no round artifacts (samples_round_0.csv) in " + run_dir.string());

    std::size_t k = 0;
    for (const auto& h : header) k += h.rfind("f_", 0) == 0 ? 1 : 0;
    if (k == 0) throw IoError("sample files carry no objective columns");
    const std::size_t first_f = header.size() - k;
    std::vector<ObjectiveVector> ys;
    for (const auto& row : sample_rows) {
      std::vector<double> y;
      for (std::size_t c = first_f; c < row.size(); ++c) y.push_back(csv::to_double(row[c]));
      ys.push_back(ObjectiveVector(std::move(y)));
    }
    csv::Table final_front{header, {}};
    if (!ys.empty()) {
      for (auto i : non_dominated_filter(ys)) final_front.rows.push_back(sample_rows[i]);
    }

    csv::write(target / "rounds_combined.csv", combined);
    csv::write(target / "final_sample_front.csv", final_front);
    out << "rounds: " << rounds << ", rows: " << combined.rows.size() << ", final front: "
        << final_front.rows.size() << '\n';
    out << "wrote " << (target / "rounds_combined.csv").string() << " and "
        << (target / "final_sample_front.csv").string() << '\n';
    return exit_ok;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_failure;
  }
}

int cmd_study(const CommonOptions& options, std::ostream& out, std::ostream& err) {
  RunConfig config;
  std::string text;
  try {
    std::tie(config, text) = load_config(options);
  } catch (const Error& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return exit_usage;
  }
  configure_logging(config.output.verbose, err);
  try {
    const auto problem = config.make_problem();
    const fs::path root = config.output.directory;
    fs::create_directories(root);
    {
      std::ofstream snapshot(root / "config.json");
      snapshot << (text.empty() ? to_json(config).dump(2) + "\n" : text);
    }
    auto observer = [&](const driver::StudyCell& cell, const driver::RunRecord& record) {
      const auto name = std::string(driver::to_string(cell.surrogate)) + "_s" +
                        std::to_string(cell.batch_size) + "_r" + std::to_string(cell.repetition);
      auto cell_config = config;
      cell_config.samo = record.config;
      write_record(record, problem, root / name, config.output.save_surrogates, text, cell_config);
      out << name << ": " << driver::to_string(record.termination) << ", " << record.rounds.size()
          << " rounds, " << record.evaluations() << " evaluations, " << record.total_time << " s"
          << std::endl;
    };
    const auto rows = driver::sample_size_study(problem, config.study_options(), config.samo, observer);

    csv::Table table{{"size", "surrogate", "repetition", "rounds", "evaluations", "total_time_s",
                      "per_round_time_s", "igd", "status"},
                     {}};
    bool failed = false;
    for (const auto& r : rows) {
      failed = failed || r.status == driver::Termination::error;
      table.rows.push_back({std::to_string(r.cell.batch_size), std::string(driver::to_string(r.cell.surrogate)),
                            std::to_string(r.cell.repetition), std::to_string(r.rounds),
                            std::to_string(r.evaluations), csv::format(r.total_time),
                            csv::format(r.per_round_time), r.igd ? csv::format(*r.igd) : "",
                            std::string(driver::to_string(r.status))});
    }
    csv::write(root / "study.csv", table);
    out << "wrote " << (root / "study.csv").string() << " (" << rows.size() << " rows)\n";
    return failed ? exit_failure : exit_ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_failure;
  }
}

int cmd_evaluate(const CommonOptions& options, const std::string& point, std::ostream& out,
                 std::ostream& err) {
  RunConfig config;
  try {
    config = load_config(options).first;
  } catch (const Error& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return exit_usage;
  }
  try {
    const auto problem = config.make_problem();
    const auto& b = problem.bounds();
    std::vector<double> x;
    if (point.empty()) {
      for (std::size_t i = 0; i < b.dimension(); ++i) x.push_back(0.5 * (b.lower()[i] + b.upper()[i]));
    } else {
      std::stringstream ss(point);
      std::string cell;
      while (std::getline(ss, cell, ',')) x.push_back(csv::to_double(cell));
    }
    if (x.size() != problem.dimension()) {
      err << "expected " << problem.dimension() << " coordinates, got " << x.size() << '\n';
      return exit_usage;
    }
    const DecisionVector point_x(x);
    if (!b.contains(point_x)) throw DomainError("point lies outside the decision box of " + problem.name());
    const auto y = problem.evaluate(point_x);
    std::vector<std::string> header;
    for (std::size_t k = 1; k <= y.size(); ++k) header.push_back("f_" + std::to_string(k));
    for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
    out << '\n';
    for (std::size_t k = 0; k < y.size(); ++k) out << (k ? "," : "") << csv::format(y[k]);
    out << '\n';
    return exit_ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_failure;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Surrogate-assisted multi-objective optimisation"};
  app.require_subcommand(1);

  CommonOptions common;
  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", common.config, "JSON configuration file");
    if (config_required) opt->required();
    sub->add_option("--out", common.out, "Output directory (overrides output.directory)");
    sub->add_option("--seed", common.seed, "Master seed (overrides samo.seed)");
    sub->add_option("--jobs", common.jobs, "Concurrent expensive evaluations")->check(CLI::PositiveNumber);
    sub->add_flag("--verbose", common.verbose, "Log progress to stderr");
  };

  auto* run = app.add_subcommand("run", "Run the optimisation loop and write a run directory");
  add_common(run, true);

  auto* study = app.add_subcommand("study", "Sample-size study over batch sizes and surrogates");
  add_common(study, true);

  std::string point;
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate the expensive objective at one point");
  add_common(evaluate, false);
  evaluate->add_option("--x", point, "Comma-separated coordinates (default: box centre)");

  std::string run_dir;
  std::string front_out;
  auto* front = app.add_subcommand("front", "Collect plot data of a run directory");
  front->add_option("run_dir", run_dir, "Run directory")->required();
  front->add_option("--out", front_out, "Directory for the CSV files (default: run directory)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? exit_ok : exit_usage;
  }

  if (*run) return cmd_run(common, out, err);
  if (*study) return cmd_study(common, out, err);
  if (*evaluate) return cmd_evaluate(common, point, out, err);
  if (*front) {
    return cmd_front(run_dir, front_out.empty() ? std::nullopt : std::optional<fs::path>(front_out), out, err);
  }
  return exit_usage;
}

}  // namespace samo::cli
