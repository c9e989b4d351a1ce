#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "samo/mgda.hpp"
#include "samo/mlp.hpp"
#include "samo/nsga2.hpp"
#include "samo/pareto.hpp"
#include "samo/problem.hpp"
#include "samo/rbf.hpp"
#include "samo/sampling.hpp"

namespace samo::driver {

enum class SurrogateKind { mlp, rbf };
enum class OptimizerKind { nsga2, mgda };

std::string_view to_string(SurrogateKind kind);
std::string_view to_string(OptimizerKind kind);
SurrogateKind parse_surrogate_kind(std::string_view text);
/// Accepts "nsga2", "mgda" and "mgda-multistart".
OptimizerKind parse_optimizer_kind(std::string_view text);

struct RbfOptions {
  /// Fixed kernel width; unset selects a width from `width_grid` by
  /// cross-validation in every round.
  std::optional<double> sigma;
  std::vector<double> width_grid = surrogate::default_width_grid();
  std::size_t folds = 5;
  double lambda = 1e-8;
  friend bool operator==(const RbfOptions&, const RbfOptions&) = default;
};

struct SamoConfig {
  /// Maximum number of expensive evaluations S.
  std::size_t budget = 120;
  /// Samples per round s.
  std::size_t batch_size = 20;
  /// Stop once consecutive surrogate fronts are closer than this.
  double h_min = 2.0;
  HausdorffScaling hausdorff_scaling = HausdorffScaling::raw;
  SurrogateKind surrogate = SurrogateKind::mlp;
  OptimizerKind optimizer = OptimizerKind::nsga2;
  /// M: NSGA-II population size, or the number of MGDA starts.
  std::size_t population_size = 100;
  moea::MoeaConfig nsga2{};
  mgda::MgdaConfig mgda{};
  surrogate::TrainConfig mlp{};
  RbfOptions rbf{};
  sampling::InformedSamplingOptions sampling{};
  std::uint64_t seed = 0;
  /// Concurrent expensive evaluations (and MGDA starts).
  std::size_t jobs = 1;

  void validate() const;
  friend bool operator==(const SamoConfig&, const SamoConfig&) = default;
};

struct RoundTimings {
  double sampling = 0.0;
  double evaluation = 0.0;
  double training = 0.0;
  double optimization = 0.0;
  double total = 0.0;
};

struct SurrogateInfo {
  std::string kind;
  nlohmann::json model;
  /// RBF: the kernel width used and, when selected, the CV errors per grid entry.
  std::optional<double> sigma;
  std::vector<double> cv_mse;
  /// MLP: epoch with the best validation loss and its losses.
  std::optional<std::size_t> best_epoch;
  std::optional<double> train_loss;
  std::optional<double> validation_loss;
};

struct RoundRecord {
  std::size_t index = 0;
  sampling::SamplePlan plan;
  std::vector<Sample> new_samples;
  std::size_t dataset_size = 0;
  std::optional<SurrogateInfo> surrogate;
  /// Surrogate Pareto approximation; objectives are surrogate predictions.
  ParetoApproximation front;
  /// Distance to the previous round's front (absent in round 0).
  std::optional<double> hausdorff;
  std::size_t optimizer_evaluations = 0;
  std::size_t optimizer_dropped = 0;
  RoundTimings timings;
};

enum class Termination { converged, budget, error };
std::string_view to_string(Termination t);

struct RunRecord {
  std::string problem;
  SamoConfig config;
  std::vector<RoundRecord> rounds;
  Dataset dataset;
  /// Non-dominated subset of all expensive samples.
  ParetoApproximation sample_front;
  Termination termination = Termination::budget;
  std::string error;
  double total_time = 0.0;

  std::size_t evaluations() const noexcept { return dataset.size(); }
};

/// Called after every completed (or aborted) round with the record so far.
using RoundObserver = std::function<void(const RoundRecord&, const Dataset&)>;

struct ConvergenceCheck {
  bool converged = false;
  double h = 0.0;
};

/// h = Hausdorff distance of the two fronts; converged iff h < h_min.
ConvergenceCheck check_convergence(std::span<const ObjectiveVector> previous,
                                   std::span<const ObjectiveVector> current, double h_min,
                                   HausdorffScaling scaling = HausdorffScaling::raw);

/// Trains the configured surrogate on `data`.
std::unique_ptr<surrogate::SurrogateModel> fit_surrogate(const Dataset& data, const SamoConfig& cfg,
                                                         std::uint64_t seed, SurrogateInfo* info = nullptr);

struct OptimizerOutcome {
  ParetoApproximation front;
  std::size_t evaluations = 0;
  std::size_t dropped = 0;
};

/// Solves the surrogate problem with the configured optimizer.
OptimizerOutcome optimize_surrogate(const surrogate::SurrogateModel& model, const BoxBounds& bounds,
                                    const SamoConfig& cfg, std::uint64_t seed);

/// Surrogate-assisted optimisation loop: an LHS round, then Pareto-informed
/// rounds while (j - 1) * s < S, each followed by a refit and a new surrogate
/// front, until consecutive fronts are closer than h_min. Total expensive
/// evaluations never exceed S + s. Failures inside a round end the run with
/// Termination::error and a partial record.
RunRecord samo_run(const problems::Problem& problem, const SamoConfig& cfg,
                   const RoundObserver& observer = {});

/// Inverted generational distance: mean distance from each reference point
/// to its nearest approximation point.
double igd(std::span<const ObjectiveVector> reference, std::span<const ObjectiveVector> approximation);

struct ReferenceQuality {
  double igd = 0.0;
  double hausdorff = 0.0;
};

/// IGD and Hausdorff distance after mapping the reference front's ideal and
/// nadir points to 0 and 1.
ReferenceQuality normalized_quality(std::span<const ObjectiveVector> reference,
                                    std::span<const ObjectiveVector> approximation);

}  // namespace samo::driver
