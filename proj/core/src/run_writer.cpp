#include "samo/run_writer.hpp"

#include <fstream>

#include "samo/csv.hpp"

namespace samo::driver {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> point_row(std::size_t round, const DecisionVector& x, const ObjectiveVector& y) {
  std::vector<std::string> row;
  row.reserve(1 + x.size() + y.size());
  row.push_back(std::to_string(round));
  for (double v : x) row.push_back(csv::format(v));
  for (double v : y) row.push_back(csv::format(v));
  return row;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

nlohmann::json optional_number(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

std::vector<std::string> point_header(std::size_t n, std::size_t k) {
  std::vector<std::string> h{"round"};
  for (std::size_t i = 1; i <= n; ++i) h.push_back("x_" + std::to_string(i));
  for (std::size_t i = 1; i <= k; ++i) h.push_back("f_" + std::to_string(i));
  return h;
}

nlohmann::json round_metrics(const RoundRecord& round) {
  nlohmann::json j{{"round", round.index},
                   {"origin", sampling::to_string(round.plan.origin)},
                   {"new_samples", round.new_samples.size()},
                   {"dataset_size", round.dataset_size},
                   {"replaced_centroids", round.plan.replaced},
                   {"random_fallbacks", round.plan.random_fallbacks},
                   {"front_size", round.front.size()},
                   {"hausdorff", optional_number(round.hausdorff)},
                   {"optimizer_evaluations", round.optimizer_evaluations},
                   {"optimizer_dropped", round.optimizer_dropped},
                   {"timings_s",
                    {{"sampling", round.timings.sampling},
                     {"evaluation", round.timings.evaluation},
                     {"training", round.timings.training},
                     {"optimization", round.timings.optimization},
                     {"total", round.timings.total}}}};
  if (round.surrogate) {
    const auto& s = *round.surrogate;
    nlohmann::json sj{{"kind", s.kind}};
    if (s.sigma) sj["sigma"] = *s.sigma;
    if (!s.cv_mse.empty()) sj["cv_mse"] = s.cv_mse;
    if (s.best_epoch) sj["best_epoch"] = *s.best_epoch;
    if (s.train_loss) sj["train_loss"] = *s.train_loss;
    if (s.validation_loss) sj["validation_loss"] = *s.validation_loss;
    j["surrogate"] = std::move(sj);
  } else {
    j["surrogate"] = nullptr;
  }
  return j;
}

RunWriter::RunWriter(fs::path directory, const problems::Problem& problem, bool save_surrogates)
    : directory_(std::move(directory)), problem_(problem), save_surrogates_(save_surrogates) {
  std::error_code ec;
  fs::create_directories(directory_, ec);
  if (ec || !fs::is_directory(directory_)) {
    throw IoError("cannot create run directory " + directory_.string() + ": " + ec.message());
  }
  problem_.write_artifacts(directory_);
}

void RunWriter::write_config(const std::string& verbatim, const nlohmann::json& resolved) const {
  std::ofstream out(directory_ / "config.json");
  if (!out) throw IoError("cannot write " + (directory_ / "config.json").string());
  out << verbatim;
  write_json(directory_ / "config.resolved.json", resolved);
}

void RunWriter::on_round(const RoundRecord& round, const Dataset& data) {
  const std::size_t n = problem_.dimension();
  const std::size_t k = problem_.objectives();
  const auto tag = std::to_string(round.index);

  csv::Table samples{point_header(n, k), {}};
  for (const auto& s : round.new_samples) samples.rows.push_back(point_row(round.index, s.x, s.y));
  csv::write(directory_ / ("samples_round_" + tag + ".csv"), samples);

  if (!round.front.empty()) {
    csv::Table front{point_header(n, k), {}};
    for (std::size_t i = 0; i < round.front.size(); ++i) {
      front.rows.push_back(point_row(round.index, round.front.decision_set()[i], round.front.front()[i]));
    }
    csv::write(directory_ / ("front_round_" + tag + ".csv"), front);
  }
  if (save_surrogates_ && round.surrogate) {
    write_json(directory_ / ("surrogate_round_" + tag + ".json"), round.surrogate->model);
  }
  rounds_.push_back(round_metrics(round));
  evaluations_ = data.size();
  write_metrics(nullptr);
}

RoundObserver RunWriter::observer() {
  return [this](const RoundRecord& round, const Dataset& data) { on_round(round, data); };
}

void RunWriter::finish(const RunRecord& record) {
  const std::size_t n = problem_.dimension();
  const std::size_t k = problem_.objectives();
  csv::Table all{point_header(n, k), {}};
  for (const auto& s : record.dataset.samples()) all.rows.push_back(point_row(s.iteration, s.x, s.y));
  csv::write(directory_ / "samples.csv", all);

  // The round column of the final front is the round that sampled the point.
  csv::Table front{point_header(n, k), {}};
  const auto& xs = record.sample_front.decision_set();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::size_t origin = 0;
    for (const auto& s : record.dataset.samples()) {
      if (s.x == xs[i]) {
        origin = s.iteration;
        break;
      }
    }
    front.rows.push_back(point_row(origin, xs[i], record.sample_front.front()[i]));
  }
  csv::write(directory_ / "final_front.csv", front);
  evaluations_ = record.dataset.size();
  write_metrics(&record);
}

void RunWriter::write_metrics(const RunRecord* record) const {
  nlohmann::json j{{"schema_version", metrics_schema_version},
                   {"problem", problem_.name()},
                   {"dimension", problem_.dimension()},
                   {"objectives", problem_.objectives()},
                   {"status", record ? std::string(to_string(record->termination)) : "running"},
                   {"rounds", rounds_.size()},
                   {"evaluations", evaluations_},
                   {"round_metrics", rounds_}};
  if (record) {
    const auto& cfg = record->config;
    j["budget"] = cfg.budget;
    j["batch_size"] = cfg.batch_size;
    j["h_min"] = cfg.h_min;
    j["surrogate"] = to_string(cfg.surrogate);
    j["optimizer"] = to_string(cfg.optimizer);
    j["population_size"] = cfg.population_size;
    j["seed"] = cfg.seed;
    j["error"] = record->error.empty() ? nlohmann::json(nullptr) : nlohmann::json(record->error);
    j["final_front_size"] = record->sample_front.size();
    j["total_time_s"] = record->total_time;
    if (problem_.has_reference_front() && !record->sample_front.empty()) {
      const auto ref = problem_.reference_front(1000);
      const auto q = normalized_quality(ref, record->sample_front.front());
      j["reference"] = {{"points", ref.size()}, {"igd", q.igd}, {"hausdorff", q.hausdorff}};
    }
  }
  write_json(directory_ / "metrics.json", j);
}

}  // namespace samo::driver
