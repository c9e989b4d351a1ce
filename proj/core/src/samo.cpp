#include "samo/samo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "samo/log.hpp"
#include "samo/parallel.hpp"

namespace samo::driver {

std::string_view to_string(SurrogateKind kind) { return kind == SurrogateKind::mlp ? "mlp" : "rbf"; }

std::string_view to_string(OptimizerKind kind) { return kind == OptimizerKind::nsga2 ? "nsga2" : "mgda"; }

SurrogateKind parse_surrogate_kind(std::string_view text) {
  if (text == "mlp" || text == "ann") return SurrogateKind::mlp;
  if (text == "rbf") return SurrogateKind::rbf;
  throw ConfigError("unknown surrogate '" + std::string(text) + "' (expected mlp or rbf)");
}

OptimizerKind parse_optimizer_kind(std::string_view text) {
  if (text == "nsga2") return OptimizerKind::nsga2;
  if (text == "mgda" || text == "mgda-multistart") return OptimizerKind::mgda;
  throw ConfigError("unknown optimizer '" + std::string(text) + "' (expected nsga2 or mgda)");
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::converged:
      return "converged";
    case Termination::budget:
      return "budget";
    case Termination::error:
      return "error";
  }
  return "error";
}

void SamoConfig::validate() const {
  if (batch_size < 2) throw ConfigError("batch_size must be >= 2");
  if (budget < batch_size) {
    throw ConfigError("batch_size (" + std::to_string(batch_size) + ") must not exceed budget (" +
                      std::to_string(budget) + ")");
  }
  if (!(h_min > 0.0)) throw ConfigError("h_min must be > 0");
  if (population_size < 2) throw ConfigError("population_size must be >= 2");
  if (optimizer == OptimizerKind::nsga2 && population_size % 2 != 0) {
    throw ConfigError("population_size must be even for nsga2");
  }
  if (jobs == 0) throw ConfigError("jobs must be >= 1");
  if (optimizer == OptimizerKind::nsga2) {
    auto moea_cfg = nsga2;
    moea_cfg.population_size = population_size;
    moea_cfg.validate();
  } else {
    auto mgda_cfg = mgda;
    mgda_cfg.starts = population_size;
    mgda_cfg.validate();
  }
  mlp.validate();
  if (rbf.sigma && !(*rbf.sigma > 0.0)) throw ConfigError("rbf.sigma must be > 0");
  if (!rbf.sigma && rbf.width_grid.empty()) throw ConfigError("rbf.width_grid must not be empty");
  for (double w : rbf.width_grid) {
    if (!(w > 0.0)) throw ConfigError("rbf.width_grid entries must be > 0");
  }
  if (rbf.folds < 2) throw ConfigError("rbf.folds must be >= 2");
  if (!(rbf.lambda >= 0.0)) throw ConfigError("rbf.lambda must be >= 0");
}

ConvergenceCheck check_convergence(std::span<const ObjectiveVector> previous,
                                   std::span<const ObjectiveVector> current, double h_min,
                                   HausdorffScaling scaling) {
  if (previous.empty() || current.empty()) throw EmptyInputError("check_convergence: empty front");
  const double h = hausdorff_distance(previous, current, scaling);
  return {h < h_min, h};
}

std::unique_ptr<surrogate::SurrogateModel> fit_surrogate(const Dataset& data, const SamoConfig& cfg,
                                                         std::uint64_t seed, SurrogateInfo* info) {
  SurrogateInfo local;
  std::unique_ptr<surrogate::SurrogateModel> model;
  if (cfg.surrogate == SurrogateKind::mlp) {
    auto train = cfg.mlp;
    train.seed = seed;
    auto fitted = surrogate::fit_mlp(data, train);
    const auto& best = fitted.history()[fitted.best_epoch()];
    local.best_epoch = fitted.best_epoch();
    local.train_loss = best.train;
    local.validation_loss = best.validation;
    model = std::make_unique<surrogate::MlpModel>(std::move(fitted));
  } else {
    double sigma = 0.0;
    if (cfg.rbf.sigma) {
      sigma = *cfg.rbf.sigma;
    } else {
      auto sel = surrogate::select_rbf_width(data, cfg.rbf.width_grid, cfg.rbf.folds, cfg.rbf.lambda);
      sigma = sel.sigma;
      local.cv_mse = std::move(sel.cv_mse);
    }
    local.sigma = sigma;
    model = std::make_unique<surrogate::RbfModel>(surrogate::fit_rbf(data, sigma, cfg.rbf.lambda));
  }
  local.kind = model->kind();
  local.model = model->to_json();
  if (info) *info = std::move(local);
  return model;
}

namespace {

/// Surrogate outputs mapped by its own output scaler, so that objectives of
/// very different magnitude weigh alike in the descent direction.
class ScaledOutputs final : public DifferentiableMap {
 public:
  explicit ScaledOutputs(const surrogate::SurrogateModel& m) : model_(m) {}
  std::size_t input_dimension() const override { return model_.input_dimension(); }
  std::size_t output_dimension() const override { return model_.output_dimension(); }
  Eigen::VectorXd value(const Eigen::VectorXd& x) const override {
    return model_.output_scaler().transform(model_.value(x));
  }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const override {
    return model_.output_scaler().scale().cwiseInverse().asDiagonal() * model_.jacobian(x);
  }

 private:
  const surrogate::SurrogateModel& model_;
};

Eigen::MatrixXd rows_of(std::span<const DecisionVector> xs, std::size_t n) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < xs.size(); ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = xs[r][c];
    }
  }
  return m;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

OptimizerOutcome optimize_surrogate(const surrogate::SurrogateModel& model, const BoxBounds& bounds,
                                    const SamoConfig& cfg, std::uint64_t seed) {
  OptimizerOutcome out;
  if (cfg.optimizer == OptimizerKind::nsga2) {
    auto moea_cfg = cfg.nsga2;
    moea_cfg.population_size = cfg.population_size;
    moea_cfg.seed = seed;
    const std::size_t n = bounds.dimension();
    auto objective = [&](std::span<const DecisionVector> xs) {
      const Eigen::MatrixXd pred = model.predict_rows(rows_of(xs, n));
      std::vector<std::vector<double>> rows(xs.size());
      for (std::size_t r = 0; r < xs.size(); ++r) {
        const auto row = pred.row(static_cast<Eigen::Index>(r));
        rows[r].assign(row.begin(), row.end());
      }
      return rows;
    };
    auto res = moea::nsga2_run(objective, bounds, moea_cfg);
    out.front = std::move(res.pareto);
    out.evaluations = res.evaluations;
    out.dropped = res.invalid_evaluations;
  } else {
    auto mgda_cfg = cfg.mgda;
    mgda_cfg.starts = cfg.population_size;
    mgda_cfg.seed = seed;
    const ScaledOutputs scaled(model);
    auto res = mgda::multistart_mgda(scaled, bounds, mgda_cfg, cfg.jobs);
    out.dropped = res.dropped;
    out.evaluations = res.converged;
    std::vector<ObjectiveVector> ys;
    ys.reserve(res.pareto.size());
    for (const auto& x : res.pareto.decision_set()) ys.push_back(model.predict(x));
    // Undoing the scaling is monotone per objective, so non-dominance holds.
    out.front = ParetoApproximation(res.pareto.decision_set(), std::move(ys));
  }
  if (out.front.empty()) throw SolverError("surrogate optimisation returned an empty front");
  return out;
}

RunRecord samo_run(const problems::Problem& problem, const SamoConfig& cfg, const RoundObserver& observer) {
  cfg.validate();
  const auto run_start = Clock::now();
  RunRecord record;
  record.problem = problem.name();
  record.config = cfg;
  const auto& bounds = problem.bounds();
  const std::size_t cap = cfg.budget + cfg.batch_size;

  auto finish_round = [&](RoundRecord& round, Clock::time_point start) {
    round.timings.total = seconds_since(start);
    round.dataset_size = record.dataset.size();
    record.rounds.push_back(round);
    if (observer) observer(record.rounds.back(), record.dataset);
  };

  ParetoApproximation previous_front;
  bool done = false;
  for (std::size_t j = 0; !done; ++j) {
    if (j >= 1 && (j - 1) * cfg.batch_size >= cfg.budget) {
      record.termination = Termination::budget;
      break;
    }
    const auto round_start = Clock::now();
    RoundRecord round;
    round.index = j;
    try {
      auto t = Clock::now();
      const std::size_t count = std::min(cfg.batch_size, cap - record.dataset.size());
      const auto sampling_seed = derive_seed(cfg.seed, "sampling", j);
      round.plan = j == 0 ? sampling::latin_hypercube(count, bounds, sampling_seed)
                          : sampling::pareto_informed_samples(previous_front, count, record.dataset,
                                                              bounds, sampling_seed, cfg.sampling);
      round.timings.sampling = seconds_since(t);

      t = Clock::now();
      const auto& points = round.plan.points;
      std::vector<std::optional<ObjectiveVector>> values(points.size());
      parallel_for(points.size(), cfg.jobs, [&](std::size_t i) { values[i] = problem.evaluate(points[i]); });
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (record.dataset.contains(points[i])) {
          log::warning("samo_run: dropping exact duplicate sample in round " + std::to_string(j));
          continue;
        }
        Sample sample{points[i], *values[i], j};
        record.dataset.add(sample);
        round.new_samples.push_back(std::move(sample));
      }
      round.timings.evaluation = seconds_since(t);

      t = Clock::now();
      SurrogateInfo info;
      const auto model = fit_surrogate(record.dataset, cfg, derive_seed(cfg.seed, "training", j), &info);
      round.surrogate = std::move(info);
      round.timings.training = seconds_since(t);

      t = Clock::now();
      auto opt = optimize_surrogate(*model, bounds, cfg, derive_seed(cfg.seed, "optimizer", j));
      round.front = std::move(opt.front);
      round.optimizer_evaluations = opt.evaluations;
      round.optimizer_dropped = opt.dropped;
      round.timings.optimization = seconds_since(t);

      if (j >= 1) {
        const auto check = check_convergence(previous_front.front(), round.front.front(), cfg.h_min,
                                             cfg.hausdorff_scaling);
        round.hausdorff = check.h;
        if (check.converged) {
          record.termination = Termination::converged;
          done = true;
        }
      }
      previous_front = round.front;
    } catch (const Error& e) {
      record.termination = Termination::error;
      record.error = "round " + std::to_string(j) + ": " + e.what();
      log::error("samo_run: " + record.error);
      done = true;
    }
    log::info("round " + std::to_string(j) + ": " + std::to_string(record.dataset.size()) +
              " evaluations" +
              (round.hausdorff ? ", h = " + std::to_string(*round.hausdorff) : std::string()));
    finish_round(round, round_start);
  }

  if (!record.dataset.empty()) {
    const auto ys = record.dataset.objectives();
    std::vector<DecisionVector> xs;
    std::vector<ObjectiveVector> front;
    for (auto i : non_dominated_filter(ys)) {
      xs.push_back(record.dataset[i].x);
      front.push_back(ys[i]);
    }
    record.sample_front = ParetoApproximation(std::move(xs), std::move(front));
  }
  record.total_time = seconds_since(run_start);
  return record;
}

double igd(std::span<const ObjectiveVector> reference, std::span<const ObjectiveVector> approximation) {
  if (reference.empty() || approximation.empty()) throw EmptyInputError("igd: empty point set");
  double sum = 0.0;
  for (const auto& r : reference) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : approximation) best = std::min(best, euclidean_distance(r.values(), a.values()));
    sum += best;
  }
  return sum / static_cast<double>(reference.size());
}

ReferenceQuality normalized_quality(std::span<const ObjectiveVector> reference,
                                    std::span<const ObjectiveVector> approximation) {
  if (reference.empty() || approximation.empty()) {
    throw EmptyInputError("normalized_quality: empty point set");
  }
  const std::size_t k = reference.front().size();
  std::vector<double> ideal(k, std::numeric_limits<double>::infinity());
  std::vector<double> nadir(k, -std::numeric_limits<double>::infinity());
  for (const auto& r : reference) {
    for (std::size_t m = 0; m < k; ++m) {
      ideal[m] = std::min(ideal[m], r[m]);
      nadir[m] = std::max(nadir[m], r[m]);
    }
  }
  const auto ref = rescale(reference, ideal, nadir);
  const auto app = rescale(approximation, ideal, nadir);
  return {igd(ref, app), hausdorff_distance(ref, app)};
}

}  // namespace samo::driver
