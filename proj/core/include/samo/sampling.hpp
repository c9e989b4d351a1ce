#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "samo/types.hpp"

namespace samo::sampling {

enum class PlanOrigin { latin_hypercube, pareto_informed };

std::string_view to_string(PlanOrigin origin);

struct SamplePlan {
  std::vector<DecisionVector> points;
  PlanOrigin origin = PlanOrigin::latin_hypercube;
  std::uint64_t seed = 0;
  /// Centroids swapped for the nearest unsampled Pareto member.
  std::size_t replaced = 0;
  /// Slots filled with fresh uniform points because no candidate was left.
  std::size_t random_fallbacks = 0;
};

/// Latin hypercube design: along every axis each of the `count` equal-width
/// strata holds exactly one point, jittered uniformly inside the stratum.
SamplePlan latin_hypercube(std::size_t count, const BoxBounds& bounds, std::uint64_t seed);

struct KMeansResult {
  std::vector<DecisionVector> centroids;
  std::vector<std::size_t> assignment;
  std::size_t iterations = 0;
  /// Within-cluster sum of squares after every assignment step.
  std::vector<double> inertia;
};

/// Lloyd iterations from k-means++ seeding until the assignment stops
/// changing or `max_iterations` is hit. Throws ConfigError when k exceeds the
/// number of distinct points.
KMeansResult kmeans(std::span<const DecisionVector> points, std::size_t k, std::uint64_t seed,
                    std::size_t max_iterations = 300);

/// Number of bitwise-distinct vectors.
std::size_t count_distinct(std::span<const DecisionVector> points);

struct InformedSamplingOptions {
  /// Replace near-duplicates of already sampled points. When false, only
  /// exact duplicates are dropped (the plan may then shrink).
  bool replace_duplicates = true;
  double duplicate_radius = 1e-9;
  friend bool operator==(const InformedSamplingOptions&, const InformedSamplingOptions&) = default;
};

/// k-means centroids of the surrogate Pareto set, clamped into the box, with
/// near-duplicates of `existing` (or of earlier batch members) replaced by the
/// nearest unsampled Pareto member, or by a uniform random point when none is
/// left. If the Pareto set has fewer distinct points than `count`, the
/// remaining slots take unused Pareto members (farthest first), then random
/// points.
SamplePlan pareto_informed_samples(const ParetoApproximation& pareto, std::size_t count,
                                   const Dataset& existing, const BoxBounds& bounds,
                                   std::uint64_t seed, const InformedSamplingOptions& options = {});

}  // namespace samo::sampling
