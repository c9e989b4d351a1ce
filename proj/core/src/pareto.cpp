#include "samo/pareto.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace samo {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.size() != b.size()) {
    throw DimensionError("dominates: objective counts " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  bool strictly_better = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k]) return false;
    if (a[k] < b[k]) strictly_better = true;
  }
  return strictly_better;
}

std::vector<std::size_t> non_dominated_filter(std::span<const ObjectiveVector> points) {
  if (points.empty()) throw EmptyInputError("non_dominated_filter: no points");
  const std::size_t k = points.front().size();
  for (const auto& p : points) {
    if (p.size() != k) throw DimensionError("non_dominated_filter: mixed objective counts");
  }

  // A dominator always precedes the point it dominates in lexicographic
  // order, so one sweep against the running archive suffices.
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return std::lexicographical_compare(points[i].begin(), points[i].end(), points[j].begin(),
                                        points[j].end());
  });

  std::vector<std::size_t> archive;
  for (std::size_t idx : order) {
    const bool dominated = std::any_of(archive.begin(), archive.end(), [&](std::size_t a) {
      return dominates(points[a], points[idx]);
    });
    if (!dominated) archive.push_back(idx);
  }
  std::sort(archive.begin(), archive.end());
  return archive;
}

double directed_distance(std::span<const ObjectiveVector> from, std::span<const ObjectiveVector> to) {
  if (from.empty() || to.empty()) throw EmptyInputError("directed_distance: empty point set");
  double worst = 0.0;
  for (const auto& a : from) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& b : to) {
      nearest = std::min(nearest, euclidean_distance(a.values(), b.values()));
    }
    worst = std::max(worst, nearest);
  }
  return worst;
}

double hausdorff_distance(std::span<const ObjectiveVector> x, std::span<const ObjectiveVector> y,
                          HausdorffScaling scaling) {
  if (x.empty() || y.empty()) throw EmptyInputError("hausdorff_distance: empty point set");
  const std::size_t k = x.front().size();
  for (const auto& p : x) {
    if (p.size() != k) throw DimensionError("hausdorff_distance: mixed objective counts");
  }
  for (const auto& p : y) {
    if (p.size() != k) throw DimensionError("hausdorff_distance: mixed objective counts");
  }

  if (scaling == HausdorffScaling::raw) {
    return std::max(directed_distance(x, y), directed_distance(y, x));
  }

  std::vector<double> lo(k, std::numeric_limits<double>::infinity());
  std::vector<double> hi(k, -std::numeric_limits<double>::infinity());
  for (auto set : {x, y}) {
    for (const auto& p : set) {
      for (std::size_t i = 0; i < k; ++i) {
        lo[i] = std::min(lo[i], p[i]);
        hi[i] = std::max(hi[i], p[i]);
      }
    }
  }
  const auto xs = rescale(x, lo, hi);
  const auto ys = rescale(y, lo, hi);
  return std::max(directed_distance(xs, ys), directed_distance(ys, xs));
}

std::vector<ObjectiveVector> rescale(std::span<const ObjectiveVector> points,
                                     std::span<const double> ideal, std::span<const double> nadir) {
  if (ideal.size() != nadir.size()) throw DimensionError("rescale: ideal/nadir length mismatch");
  std::vector<ObjectiveVector> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    if (p.size() != ideal.size()) throw DimensionError("rescale: point length mismatch");
    std::vector<double> v(p.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double range = nadir[i] - ideal[i];
      v[i] = range > 0.0 ? (p[i] - ideal[i]) / range : p[i] - ideal[i];
    }
    out.emplace_back(std::move(v));
  }
  return out;
}

}  // namespace samo
