#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "samo/types.hpp"

namespace samo {

/// Minimization dominance: a is no worse in every objective and strictly
/// better in at least one.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Indices (ascending) of the points not dominated by any other point.
std::vector<std::size_t> non_dominated_filter(std::span<const ObjectiveVector> points);

/// Whether objectives are compared raw or after mapping the union of both
/// sets onto the unit box.
enum class HausdorffScaling { raw, joint_range };

/// Hausdorff distance between two finite point sets under the Euclidean norm.
double hausdorff_distance(std::span<const ObjectiveVector> x, std::span<const ObjectiveVector> y,
                          HausdorffScaling scaling = HausdorffScaling::raw);

/// max over a in from of min over b in to of |a - b|.
double directed_distance(std::span<const ObjectiveVector> from, std::span<const ObjectiveVector> to);

/// Maps each point affinely so that ideal -> 0 and nadir -> 1 per objective.
/// Objectives with nadir == ideal are only shifted.
std::vector<ObjectiveVector> rescale(std::span<const ObjectiveVector> points,
                                     std::span<const double> ideal, std::span<const double> nadir);

}  // namespace samo
