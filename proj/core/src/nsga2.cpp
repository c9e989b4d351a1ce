#include "samo/nsga2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "samo/pareto.hpp"
#include "samo/sampling.hpp"

namespace samo::moea {

void MoeaConfig::validate() const {
  if (population_size < 2 || population_size % 2 != 0) {
    throw ConfigError("MoeaConfig: population_size must be even and >= 2");
  }
  auto probability = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError(std::string("MoeaConfig: ") + name + " must lie in [0, 1]");
  };
  probability(crossover_probability, "crossover_probability");
  probability(crossover_variable_probability, "crossover_variable_probability");
  if (mutation_probability) probability(*mutation_probability, "mutation_probability");
  if (!(crossover_eta >= 0.0)) throw ConfigError("MoeaConfig: crossover_eta must be >= 0");
  if (!(mutation_eta >= 0.0)) throw ConfigError("MoeaConfig: mutation_eta must be >= 0");
}

std::vector<std::vector<std::size_t>> fast_non_dominated_sort(std::span<const ObjectiveVector> points) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> dominated_by_me(n);
  std::vector<std::size_t> domination_count(n, 0);
  std::vector<std::vector<std::size_t>> fronts(1);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      if (dominates(points[p], points[q])) {
        dominated_by_me[p].push_back(q);
        ++domination_count[q];
      } else if (dominates(points[q], points[p])) {
        dominated_by_me[q].push_back(p);
        ++domination_count[p];
      }
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (domination_count[p] == 0) fronts[0].push_back(p);
  }
  while (!fronts.back().empty()) {
    std::vector<std::size_t> next;
    for (auto p : fronts.back()) {
      for (auto q : dominated_by_me[p]) {
        if (--domination_count[q] == 0) next.push_back(q);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(next));
  }
  fronts.pop_back();
  return fronts;
}

std::vector<std::vector<std::size_t>> fast_non_dominated_sort(std::span<const Individual> population) {
  std::vector<std::size_t> valid, invalid;
  std::vector<ObjectiveVector> ys;
  for (std::size_t i = 0; i < population.size(); ++i) {
    if (population[i].y) {
      valid.push_back(i);
      ys.push_back(*population[i].y);
    } else {
      invalid.push_back(i);
    }
  }
  auto fronts = fast_non_dominated_sort(ys);
  for (auto& f : fronts) {
    for (auto& idx : f) idx = valid[idx];
  }
  if (!invalid.empty()) fronts.push_back(std::move(invalid));
  return fronts;
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> front) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const std::size_t n = front.size();
  std::vector<double> dist(n, 0.0);
  if (n <= 2) {
    std::fill(dist.begin(), dist.end(), inf);
    return dist;
  }
  const std::size_t k = front.front().size();
  std::vector<std::size_t> order(n);
  for (std::size_t m = 0; m < k; ++m) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return front[a][m] < front[b][m]; });
    const double lo = front[order.front()][m];
    const double hi = front[order.back()][m];
    dist[order.front()] = inf;
    dist[order.back()] = inf;
    const double range = hi - lo;
    if (!(range > 0.0)) continue;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      dist[order[i]] += (front[order[i + 1]][m] - front[order[i - 1]][m]) / range;
    }
  }
  return dist;
}

double sbx_spread_factor(double u, double eta) {
  const double exponent = 1.0 / (eta + 1.0);
  if (u <= 0.5) return std::pow(2.0 * u, exponent);
  return std::pow(1.0 / (2.0 * (1.0 - u)), exponent);
}

std::pair<DecisionVector, DecisionVector> sbx_crossover(const DecisionVector& p1,
                                                        const DecisionVector& p2,
                                                        double probability, double eta,
                                                        const BoxBounds& bounds, Rng& rng,
                                                        double variable_probability) {
  if (p1.size() != p2.size() || p1.size() != bounds.dimension()) {
    throw DimensionError("sbx_crossover: parent/bounds dimension mismatch");
  }
  if (!(uniform01(rng) < probability)) return {p1, p2};
  std::vector<double> c1(p1.begin(), p1.end());
  std::vector<double> c2(p2.begin(), p2.end());
  for (std::size_t i = 0; i < c1.size(); ++i) {
    if (!(uniform01(rng) < variable_probability)) continue;
    if (std::abs(p1[i] - p2[i]) <= 1e-14) continue;
    const double beta = sbx_spread_factor(uniform01(rng), eta);
    double a = 0.5 * ((1.0 + beta) * p1[i] + (1.0 - beta) * p2[i]);
    double b = 0.5 * ((1.0 - beta) * p1[i] + (1.0 + beta) * p2[i]);
    if (uniform01(rng) < 0.5) std::swap(a, b);
    c1[i] = a;
    c2[i] = b;
  }
  return {clamp_to_bounds(DecisionVector(std::move(c1)), bounds),
          clamp_to_bounds(DecisionVector(std::move(c2)), bounds)};
}

DecisionVector polynomial_mutation(const DecisionVector& x, double eta, double per_variable_probability,
                                   const BoxBounds& bounds, Rng& rng) {
  if (x.size() != bounds.dimension()) throw DimensionError("polynomial_mutation: dimension mismatch");
  std::vector<double> y(x.begin(), x.end());
  const double power = 1.0 / (eta + 1.0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(uniform01(rng) < per_variable_probability)) continue;
    const double lo = bounds.lower()[i];
    const double hi = bounds.upper()[i];
    const double width = hi - lo;
    const double v = std::clamp(y[i], lo, hi);
    const double delta1 = (v - lo) / width;
    const double delta2 = (hi - v) / width;
    const double r = uniform01(rng);
    double deltaq;
    if (r < 0.5) {
      const double val = 2.0 * r + (1.0 - 2.0 * r) * std::pow(1.0 - delta1, eta + 1.0);
      deltaq = std::pow(val, power) - 1.0;
    } else {
      const double val = 2.0 * (1.0 - r) + 2.0 * (r - 0.5) * std::pow(1.0 - delta2, eta + 1.0);
      deltaq = 1.0 - std::pow(val, power);
    }
    y[i] = std::clamp(v + deltaq * width, lo, hi);
  }
  return DecisionVector(std::move(y));
}

BatchObjective pointwise(PointObjective objective) {
  return [f = std::move(objective)](std::span<const DecisionVector> xs) {
    std::vector<std::vector<double>> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(f(x));
    return out;
  };
}

namespace {

struct Evaluated {
  std::vector<Individual> individuals;
  std::size_t invalid = 0;
};

Evaluated evaluate(const BatchObjective& objective, std::vector<DecisionVector> xs) {
  auto rows = objective(xs);
  if (rows.size() != xs.size()) {
    throw DimensionError("nsga2_run: objective returned " + std::to_string(rows.size()) +
                         " rows for " + std::to_string(xs.size()) + " inputs");
  }
  Evaluated out;
  out.individuals.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Individual ind;
    ind.x = std::move(xs[i]);
    const bool finite = !rows[i].empty() &&
                        std::all_of(rows[i].begin(), rows[i].end(), [](double v) { return std::isfinite(v); });
    if (finite) {
      ind.y = ObjectiveVector(std::move(rows[i]));
    } else {
      ++out.invalid;
    }
    out.individuals.push_back(std::move(ind));
  }
  return out;
}

/// Assigns rank and crowding to every member of `pool` and returns its fronts.
std::vector<std::vector<std::size_t>> rank_population(std::vector<Individual>& pool) {
  auto fronts = fast_non_dominated_sort(std::span<const Individual>(pool));
  for (std::size_t r = 0; r < fronts.size(); ++r) {
    const auto& f = fronts[r];
    const bool valid = pool[f.front()].y.has_value();
    std::vector<double> cd(f.size(), 0.0);
    if (valid) {
      std::vector<ObjectiveVector> ys;
      ys.reserve(f.size());
      for (auto i : f) ys.push_back(*pool[i].y);
      cd = crowding_distance(ys);
    }
    for (std::size_t j = 0; j < f.size(); ++j) {
      pool[f[j]].rank = r;
      pool[f[j]].crowding = cd[j];
    }
  }
  return fronts;
}

bool better(const Individual& a, const Individual& b) {
  if (a.rank != b.rank) return a.rank < b.rank;
  return a.crowding > b.crowding;
}

std::size_t tournament(const std::vector<Individual>& pop, Rng& rng) {
  const std::size_t a = uniform_index(rng, pop.size());
  const std::size_t b = uniform_index(rng, pop.size());
  if (better(pop[a], pop[b])) return a;
  if (better(pop[b], pop[a])) return b;
  return uniform01(rng) < 0.5 ? a : b;
}

}  // namespace

Nsga2Result nsga2_run(const BatchObjective& objective, const BoxBounds& bounds, const MoeaConfig& cfg,
                      const GenerationObserver& observer) {
  cfg.validate();
  const std::size_t m = cfg.population_size;
  const double pm = cfg.mutation_probability.value_or(1.0 / static_cast<double>(bounds.dimension()));

  Nsga2Result result;
  auto initial = sampling::latin_hypercube(m, bounds, derive_seed(cfg.seed, "initial-population"));
  auto first = evaluate(objective, std::move(initial.points));
  result.evaluations += m;
  result.invalid_evaluations += first.invalid;
  std::vector<Individual> population = std::move(first.individuals);
  rank_population(population);
  if (observer) observer(0, population);

  for (std::size_t gen = 1; gen <= cfg.generations; ++gen) {
    Rng rng(derive_seed(cfg.seed, "generation", gen));

    std::vector<DecisionVector> children;
    children.reserve(m);
    while (children.size() < m) {
      const auto& a = population[tournament(population, rng)].x;
      const auto& b = population[tournament(population, rng)].x;
      auto [c1, c2] = sbx_crossover(a, b, cfg.crossover_probability, cfg.crossover_eta, bounds, rng,
                                    cfg.crossover_variable_probability);
      children.push_back(polynomial_mutation(c1, cfg.mutation_eta, pm, bounds, rng));
      children.push_back(polynomial_mutation(c2, cfg.mutation_eta, pm, bounds, rng));
    }

    auto offspring = evaluate(objective, std::move(children));
    result.evaluations += m;
    result.invalid_evaluations += offspring.invalid;

    std::vector<Individual> pool = std::move(population);
    pool.insert(pool.end(), std::make_move_iterator(offspring.individuals.begin()),
                std::make_move_iterator(offspring.individuals.end()));
    const auto fronts = rank_population(pool);

    std::vector<Individual> next;
    next.reserve(m);
    for (const auto& f : fronts) {
      if (next.size() + f.size() <= m) {
        for (auto i : f) next.push_back(pool[i]);
        continue;
      }
      std::vector<std::size_t> order = f;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return pool[a].crowding > pool[b].crowding; });
      for (std::size_t j = 0; next.size() < m; ++j) next.push_back(pool[order[j]]);
      break;
    }
    population = std::move(next);
    if (observer) observer(gen, population);
  }

  std::vector<DecisionVector> xs;
  std::vector<ObjectiveVector> ys;
  for (const auto& ind : population) {
    if (ind.rank == 0 && ind.y) {
      xs.push_back(ind.x);
      ys.push_back(*ind.y);
    }
  }
  result.pareto = ParetoApproximation(std::move(xs), std::move(ys));
  result.population = std::move(population);
  return result;
}

}  // namespace samo::moea
