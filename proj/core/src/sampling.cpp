#include "samo/sampling.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <set>

#include "samo/log.hpp"
#include "samo/random.hpp"

namespace samo::sampling {

std::string_view to_string(PlanOrigin origin) {
  return origin == PlanOrigin::latin_hypercube ? "latin-hypercube" : "pareto-informed";
}

SamplePlan latin_hypercube(std::size_t count, const BoxBounds& bounds, std::uint64_t seed) {
  if (count == 0) throw ConfigError("latin_hypercube: need at least one point");
  Rng rng(seed);
  const std::size_t n = bounds.dimension();
  std::vector<std::vector<double>> coords(count, std::vector<double>(n));
  std::vector<std::size_t> strata(count);
  for (std::size_t d = 0; d < n; ++d) {
    std::iota(strata.begin(), strata.end(), std::size_t{0});
    for (std::size_t i = count; i > 1; --i) {
      std::swap(strata[i - 1], strata[uniform_index(rng, i)]);
    }
    const double step = bounds.width(d) / static_cast<double>(count);
    for (std::size_t i = 0; i < count; ++i) {
      // Keep the jitter a hair away from the stratum edges so rounding can
      // never push a point into the neighbouring stratum.
      const double u = 1e-9 + (1.0 - 2e-9) * uniform01(rng);
      coords[i][d] = bounds.lower()[d] + step * (static_cast<double>(strata[i]) + u);
    }
  }
  SamplePlan plan;
  plan.origin = PlanOrigin::latin_hypercube;
  plan.seed = seed;
  plan.points.reserve(count);
  for (auto& c : coords) plan.points.emplace_back(std::move(c));
  return plan;
}

std::size_t count_distinct(std::span<const DecisionVector> points) {
  std::set<std::vector<std::uint64_t>> keys;
  for (const auto& p : points) {
    std::vector<std::uint64_t> key(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) key[i] = std::bit_cast<std::uint64_t>(p[i]);
    keys.insert(std::move(key));
  }
  return keys.size();
}

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace

KMeansResult kmeans(std::span<const DecisionVector> points, std::size_t k, std::uint64_t seed,
                    std::size_t max_iterations) {
  if (points.empty()) throw EmptyInputError("kmeans: no points");
  if (k == 0) throw ConfigError("kmeans: k must be >= 1");
  const std::size_t n = points.size();
  const std::size_t dim = points.front().size();
  for (const auto& p : points) {
    if (p.size() != dim) throw DimensionError("kmeans: mixed point dimensions");
  }
  const std::size_t distinct = count_distinct(points);
  if (k > distinct) {
    throw ConfigError("kmeans: k = " + std::to_string(k) + " exceeds the " +
                      std::to_string(distinct) + " distinct points");
  }

  Rng rng(seed);

  // k-means++ seeding.
  std::vector<std::vector<double>> centers;
  centers.reserve(k);
  centers.push_back(points[uniform_index(rng, n)].data());
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = squared_distance(points[i].values(), centers[0]);
  while (centers.size() < k) {
    const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
    const double target = uniform01(rng) * total;
    std::size_t pick = n;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (d2[i] <= 0.0) continue;
      acc += d2[i];
      pick = i;
      if (acc > target) break;
    }
    centers.push_back(points[pick].data());
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], squared_distance(points[i].values(), centers.back()));
    }
  }

  KMeansResult result;
  result.assignment.assign(n, std::numeric_limits<std::size_t>::max());
  std::vector<double> own_d2(n);
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d2 = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < k; ++c) {
        const double dist = squared_distance(points[i].values(), centers[c]);
        if (dist < best_d2) {
          best_d2 = dist;
          best = c;
        }
      }
      if (result.assignment[i] != best) changed = true;
      result.assignment[i] = best;
      own_d2[i] = best_d2;
      inertia += best_d2;
    }
    result.inertia.push_back(inertia);
    result.iterations = iter + 1;
    if (!changed) break;

    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto& s = sums[result.assignment[i]];
      for (std::size_t d = 0; d < dim; ++d) s[d] += points[i][d];
      ++counts[result.assignment[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        // Re-seed an empty cluster with the worst-served point.
        const auto far = static_cast<std::size_t>(
            std::max_element(own_d2.begin(), own_d2.end()) - own_d2.begin());
        centers[c] = points[far].data();
        own_d2[far] = 0.0;
        continue;
      }
      for (std::size_t d = 0; d < dim; ++d) {
        centers[c][d] = sums[c][d] / static_cast<double>(counts[c]);
      }
    }
  }

  result.centroids.reserve(k);
  for (auto& c : centers) result.centroids.emplace_back(std::move(c));
  return result;
}

namespace {

class BatchGuard {
 public:
  BatchGuard(const Dataset& existing, double radius) : existing_(existing), radius_(radius) {}

  bool near_duplicate(const DecisionVector& x) const {
    if (existing_.nearest_distance(x) <= radius_) return true;
    return std::any_of(chosen_.begin(), chosen_.end(), [&](const DecisionVector& c) {
      return euclidean_distance(c.values(), x.values()) <= radius_;
    });
  }

  bool exact_duplicate(const DecisionVector& x) const {
    return existing_.contains(x) || std::find(chosen_.begin(), chosen_.end(), x) != chosen_.end();
  }

  void accept(DecisionVector x) { chosen_.push_back(std::move(x)); }
  std::vector<DecisionVector> take() { return std::move(chosen_); }
  const std::vector<DecisionVector>& chosen() const { return chosen_; }

 private:
  const Dataset& existing_;
  double radius_;
  std::vector<DecisionVector> chosen_;
};

DecisionVector random_point(const BoxBounds& bounds, Rng& rng) {
  std::vector<double> v(bounds.dimension());
  for (std::size_t d = 0; d < v.size(); ++d) v[d] = uniform(rng, bounds.lower()[d], bounds.upper()[d]);
  return DecisionVector(std::move(v));
}

}  // namespace

SamplePlan pareto_informed_samples(const ParetoApproximation& pareto, std::size_t count,
                                   const Dataset& existing, const BoxBounds& bounds,
                                   std::uint64_t seed, const InformedSamplingOptions& options) {
  if (pareto.empty()) throw EmptyInputError("pareto_informed_samples: empty Pareto set");
  if (count == 0) throw ConfigError("pareto_informed_samples: need at least one sample");

  const auto& members = pareto.decision_set();
  const std::size_t k = std::min(count, count_distinct(members));
  auto clusters = kmeans(members, k, derive_seed(seed, "kmeans"));

  Rng rng(derive_seed(seed, "fallback"));
  SamplePlan plan;
  plan.origin = PlanOrigin::pareto_informed;
  plan.seed = seed;
  BatchGuard guard(existing, options.duplicate_radius);

  auto fresh_random = [&] {
    for (;;) {
      auto x = random_point(bounds, rng);
      if (!guard.near_duplicate(x)) return x;
    }
  };

  for (const auto& centroid : clusters.centroids) {
    auto x = clamp_to_bounds(centroid, bounds);
    if (!options.replace_duplicates) {
      if (!guard.exact_duplicate(x)) guard.accept(std::move(x));
      continue;
    }
    if (!guard.near_duplicate(x)) {
      guard.accept(std::move(x));
      continue;
    }
    const DecisionVector* nearest = nullptr;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& m : members) {
      const auto candidate = clamp_to_bounds(m, bounds);
      if (guard.near_duplicate(candidate)) continue;
      const double d = euclidean_distance(candidate.values(), x.values());
      if (d < best) {
        best = d;
        nearest = &m;
      }
    }
    if (nearest != nullptr) {
      guard.accept(clamp_to_bounds(*nearest, bounds));
      ++plan.replaced;
    } else {
      guard.accept(fresh_random());
      ++plan.random_fallbacks;
    }
  }

  // Fewer distinct Pareto members than requested samples: top up with unused
  // members, farthest from the batch first.
  while (guard.chosen().size() < count) {
    const DecisionVector* farthest = nullptr;
    double best = -1.0;
    for (const auto& m : members) {
      const auto candidate = clamp_to_bounds(m, bounds);
      if (guard.near_duplicate(candidate)) continue;
      double d = std::numeric_limits<double>::infinity();
      for (const auto& c : guard.chosen()) d = std::min(d, euclidean_distance(c.values(), candidate.values()));
      if (d > best) {
        best = d;
        farthest = &m;
      }
    }
    if (farthest != nullptr) {
      guard.accept(clamp_to_bounds(*farthest, bounds));
      ++plan.replaced;
    } else if (options.replace_duplicates) {
      guard.accept(fresh_random());
      ++plan.random_fallbacks;
    } else {
      break;
    }
  }

  if (plan.random_fallbacks > 0) {
    log::info("pareto_informed_samples: " + std::to_string(plan.random_fallbacks) +
              " slot(s) filled with random points");
  }
  plan.points = guard.take();
  return plan;
}

}  // namespace samo::sampling
