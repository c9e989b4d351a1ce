#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "samo/random.hpp"
#include "samo/types.hpp"

namespace samo::moea {

struct MoeaConfig {
  std::size_t population_size = 100;
  std::size_t generations = 200;
  /// Probability that a parent pair is recombined at all.
  double crossover_probability = 0.5;
  /// Probability that a variable of a recombined pair is crossed.
  double crossover_variable_probability = 0.5;
  double crossover_eta = 20.0;
  double mutation_eta = 20.0;
  /// Per-variable mutation probability; unset means 1 / N.
  std::optional<double> mutation_probability;
  std::uint64_t seed = 0;

  void validate() const;
  friend bool operator==(const MoeaConfig&, const MoeaConfig&) = default;
};

struct Individual {
  DecisionVector x;
  /// Empty when the objective returned non-finite values; such individuals
  /// are ranked behind every valid one.
  std::optional<ObjectiveVector> y;
  std::size_t rank = 0;
  double crowding = 0.0;
};

/// Fronts as index sets: front 0 is the non-dominated set, front i + 1 the
/// non-dominated set once fronts <= i are removed.
std::vector<std::vector<std::size_t>> fast_non_dominated_sort(std::span<const ObjectiveVector> points);

/// Same, with invalid individuals collected in one trailing front.
std::vector<std::vector<std::size_t>> fast_non_dominated_sort(std::span<const Individual> population);

/// Crowding distance of every member of one front. Extremes of each
/// objective get infinity; fronts of size <= 2 are all infinite.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> front);

/// Inverse CDF of the SBX spread factor for uniform u in [0, 1).
double sbx_spread_factor(double u, double eta);

/// Simulated binary crossover. With probability `probability` the pair is
/// recombined, each variable independently with `variable_probability`
/// (children share the parents' midpoint), then clamped into the box.
std::pair<DecisionVector, DecisionVector> sbx_crossover(const DecisionVector& p1,
                                                        const DecisionVector& p2,
                                                        double probability, double eta,
                                                        const BoxBounds& bounds, Rng& rng,
                                                        double variable_probability = 0.5);

/// Bounded polynomial mutation; the result stays inside the box.
DecisionVector polynomial_mutation(const DecisionVector& x, double eta, double per_variable_probability,
                                   const BoxBounds& bounds, Rng& rng);

/// Objective evaluated on a batch; one row of raw values per input. Rows
/// containing non-finite values mark the individual invalid.
using BatchObjective = std::function<std::vector<std::vector<double>>(std::span<const DecisionVector>)>;
using PointObjective = std::function<std::vector<double>(const DecisionVector&)>;

BatchObjective pointwise(PointObjective objective);

using GenerationObserver = std::function<void(std::size_t generation, std::span<const Individual>)>;

struct Nsga2Result {
  ParetoApproximation pareto;
  std::vector<Individual> population;
  std::size_t evaluations = 0;
  std::size_t invalid_evaluations = 0;
};

/// Elitist NSGA-II: LHS initial population, binary tournaments on
/// (rank, crowding), SBX, polynomial mutation and (mu + lambda) survival.
/// Returns the first front of the final population. The observer, if set,
/// sees the population after initialisation (generation 0) and after every
/// generation.
Nsga2Result nsga2_run(const BatchObjective& objective, const BoxBounds& bounds, const MoeaConfig& cfg,
                      const GenerationObserver& observer = {});

}  // namespace samo::moea
