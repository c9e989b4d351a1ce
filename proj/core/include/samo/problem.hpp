#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "samo/quarter_car.hpp"
#include "samo/types.hpp"

namespace samo::problems {

enum class CostClass { cheap, expensive };

/// Black-box multi-objective problem: a deterministic map from a box in R^N
/// to R^K, K >= 2.
class Problem {
 public:
  using Evaluator = std::function<ObjectiveVector(const DecisionVector&)>;
  /// Returns `count` points sampled along the true Pareto front.
  using FrontGenerator = std::function<std::vector<ObjectiveVector>(std::size_t count)>;
  /// Writes problem-specific artifacts into a run directory.
  using ArtifactWriter = std::function<void(const std::filesystem::path& directory)>;

  Problem(std::string name, std::size_t objectives, BoxBounds bounds, Evaluator evaluator,
          CostClass cost, FrontGenerator front = {}, ArtifactWriter artifacts = {});

  const std::string& name() const noexcept { return name_; }
  std::size_t dimension() const noexcept { return bounds_.dimension(); }
  std::size_t objectives() const noexcept { return objectives_; }
  const BoxBounds& bounds() const noexcept { return bounds_; }
  CostClass cost() const noexcept { return cost_; }

  /// Checks x against N and the result against K.
  ObjectiveVector evaluate(const DecisionVector& x) const;

  bool has_reference_front() const noexcept { return static_cast<bool>(front_); }
  std::vector<ObjectiveVector> reference_front(std::size_t count) const;

  void write_artifacts(const std::filesystem::path& directory) const;

 private:
  std::string name_;
  std::size_t objectives_;
  BoxBounds bounds_;
  Evaluator evaluator_;
  CostClass cost_;
  FrontGenerator front_;
  ArtifactWriter artifacts_;
};

/// Quarter-car stand-in for an expensive suspension model. A seeded 5 x N
/// matrix P with unit L1 rows maps x onto relative perturbations of the five
/// physical parameters, p = p_nominal * (1 + scale * P x), where
/// scale = max_relative_swing / half_width. Objectives are the amplitudes of
/// the wheel load and of the body acceleration over the retained window.
class QuarterCarBenchmark {
 public:
  struct Options {
    std::size_t dimension = 24;
    std::uint64_t projection_seed = 20240601;
    double half_width = 0.003;
    double max_relative_swing = 0.15;
    QuarterCarParams nominal{};
    Excitation excitation{};
    double t0 = 0.0;
    double te = 2.0;
    double dt = 1e-4;
    /// Leading fraction of the horizon discarded as transient.
    double transient_fraction = 0.5;

    friend bool operator==(const Options&, const Options&) = default;
  };

  QuarterCarBenchmark();
  explicit QuarterCarBenchmark(Options options);

  const Options& options() const noexcept { return options_; }
  const Eigen::MatrixXd& projection() const noexcept { return projection_; }
  BoxBounds bounds() const;

  QuarterCarParams parameters_for(const DecisionVector& x) const;

  /// (wheel-load amplitude [N], body-acceleration amplitude [m/s^2]).
  /// Throws DomainError for x outside the box.
  ObjectiveVector evaluate(const DecisionVector& x) const;

  /// Objectives of an explicit parameter set (no decision map involved).
  ObjectiveVector evaluate_parameters(const QuarterCarParams& params) const;

  void write_projection_csv(const std::filesystem::path& path) const;

 private:
  Options options_;
  Eigen::MatrixXd projection_;
};

/// Evaluates the default benchmark (N = 24, box +-0.003).
ObjectiveVector evaluate_mbs(const DecisionVector& x);

Problem make_mbs_problem(const QuarterCarBenchmark::Options& options = {});

/// "two-paraboloids", "zdt1" or "branin-pair". dimension = 0 selects the
/// default (4, 30, 2). Throws ConfigError for unknown names.
Problem make_analytic_problem(std::string_view name, std::size_t dimension = 0);

/// Any of the analytic names or "mbs".
Problem make_problem(std::string_view name, std::size_t dimension = 0,
                     const QuarterCarBenchmark::Options& mbs_options = {});

double branin(double x1, double x2);

}  // namespace samo::problems
