#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "oracles.hpp"
#include "samo/random.hpp"
#include "samo/sampling.hpp"

namespace samo::sampling {
namespace {

void expect_stratified(const SamplePlan& plan, const BoxBounds& bounds) {
  const std::size_t s = plan.points.size();
  for (std::size_t d = 0; d < bounds.dimension(); ++d) {
    std::vector<int> hits(s, 0);
    for (const auto& p : plan.points) {
      const double u = (p[d] - bounds.lower()[d]) / bounds.width(d);
      ASSERT_GE(u, 0.0);
      ASSERT_LE(u, 1.0);
      const auto stratum = std::min<std::size_t>(s - 1, static_cast<std::size_t>(std::floor(u * static_cast<double>(s))));
      ++hits[stratum];
    }
    for (int h : hits) ASSERT_EQ(h, 1) << "axis " << d << ", s = " << s;
  }
}

TEST(LatinHypercube, OnePointPerStratumOnEveryAxis) {
  expect_stratified(latin_hypercube(20, BoxBounds::uniform(2, 0.0, 1.0), 1), BoxBounds::uniform(2, 0.0, 1.0));
  const BoxBounds skewed({-5.0, 0.0, 100.0}, {10.0, 15.0, 101.0});
  for (std::size_t s : {1u, 2u, 7u, 33u, 64u}) expect_stratified(latin_hypercube(s, skewed, s), skewed);
  const auto wide = BoxBounds::uniform(64, -0.003, 0.003);
  expect_stratified(latin_hypercube(64, wide, 9), wide);
}

TEST(LatinHypercube, DeterministicPerSeed) {
  const auto b = BoxBounds::uniform(5, -1.0, 1.0);
  const auto a = latin_hypercube(10, b, 4);
  EXPECT_EQ(a.points, latin_hypercube(10, b, 4).points);
  EXPECT_NE(a.points, latin_hypercube(10, b, 5).points);
  EXPECT_EQ(a.origin, PlanOrigin::latin_hypercube);
  EXPECT_EQ(a.seed, 4u);
}

TEST(KMeans, EachPointItsOwnCluster) {
  const std::vector<DecisionVector> pts{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {3.0, 3.0}};
  const auto r = kmeans(pts, 4, 1);
  std::set<std::vector<double>> got, want;
  for (const auto& c : r.centroids) got.insert(c.data());
  for (const auto& p : pts) want.insert(p.data());
  EXPECT_EQ(got, want);
}

TEST(KMeans, SeparatedBlobsRecoverSampleMeans) {
  Rng rng(21);
  std::vector<DecisionVector> pts;
  double mean_a[2] = {0, 0}, mean_b[2] = {0, 0};
  for (int i = 0; i < 50; ++i) {
    const double ax = 0.1 * standard_normal(rng), ay = 0.1 * standard_normal(rng);
    const double bx = 5.0 + 0.1 * standard_normal(rng), by = 5.0 + 0.1 * standard_normal(rng);
    pts.push_back(DecisionVector{ax, ay});
    pts.push_back(DecisionVector{bx, by});
    mean_a[0] += ax / 50, mean_a[1] += ay / 50, mean_b[0] += bx / 50, mean_b[1] += by / 50;
  }
  const auto r = kmeans(pts, 2, 3);
  ASSERT_EQ(r.centroids.size(), 2u);
  auto c0 = r.centroids[0], c1 = r.centroids[1];
  if (c0[0] > c1[0]) std::swap(c0, c1);
  EXPECT_LT(testing::distance(c0.data(), {mean_a[0], mean_a[1]}), 0.05);
  EXPECT_LT(testing::distance(c1.data(), {mean_b[0], mean_b[1]}), 0.05);
}

TEST(KMeans, InertiaNonIncreasingAndDeterministic) {
  Rng rng(8);
  std::vector<DecisionVector> pts;
  for (int i = 0; i < 300; ++i) pts.push_back(DecisionVector{uniform01(rng), uniform01(rng), uniform01(rng)});
  const auto r = kmeans(pts, 12, 5);
  ASSERT_FALSE(r.inertia.empty());
  for (std::size_t i = 1; i < r.inertia.size(); ++i) EXPECT_LE(r.inertia[i], r.inertia[i - 1] + 1e-12);
  EXPECT_EQ(r.centroids, kmeans(pts, 12, 5).centroids);
  EXPECT_LE(r.iterations, 300u);
}

TEST(KMeans, IdenticalPointsAndTooManyClusters) {
  const std::vector<DecisionVector> same(5, DecisionVector{0.25, -1.0});
  const auto r = kmeans(same, 1, 0);
  EXPECT_EQ(r.centroids.front(), same.front());
  EXPECT_THROW(kmeans(same, 2, 0), ConfigError);
  EXPECT_EQ(count_distinct(same), 1u);
}

ParetoApproximation random_pareto(std::size_t n, const BoxBounds& b, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<DecisionVector> xs;
  std::vector<ObjectiveVector> ys;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x(b.dimension());
    for (std::size_t d = 0; d < x.size(); ++d) x[d] = b.lower()[d] + b.width(d) * uniform01(rng);
    xs.emplace_back(x);
    const double t = static_cast<double>(i) / static_cast<double>(n);
    ys.push_back(ObjectiveVector{t, 1.0 - t});
  }
  return ParetoApproximation(std::move(xs), std::move(ys));
}

double min_pairwise(const std::vector<DecisionVector>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, euclidean_distance(pts[i].values(), pts[j].values()));
  }
  return best;
}

TEST(ParetoInformed, FullCountReturnsTheParetoSet) {
  const auto b = BoxBounds::uniform(3, -1.0, 1.0);
  const auto pareto = random_pareto(30, b, 2);
  const auto plan = pareto_informed_samples(pareto, 30, Dataset{}, b, 7);
  EXPECT_EQ(plan.origin, PlanOrigin::pareto_informed);
  std::set<std::vector<double>> got, want;
  for (const auto& p : plan.points) got.insert(p.data());
  for (const auto& p : pareto.decision_set()) want.insert(p.data());
  EXPECT_EQ(got, want);
}

TEST(ParetoInformed, SpreadsBetterThanRandomSubsets) {
  const auto b = BoxBounds::uniform(4, -1.0, 1.0);
  double informed = 0.0, random = 0.0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto pareto = random_pareto(100, b, 100 + seed);
    informed += min_pairwise(pareto_informed_samples(pareto, 20, Dataset{}, b, seed).points);
    Rng rng(seed);
    auto pool = pareto.decision_set();
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(20);
    random += min_pairwise(pool);
  }
  EXPECT_GT(informed, random);
}

TEST(ParetoInformed, AlreadySampledSetFallsBackToFreshPoints) {
  const auto b = BoxBounds::uniform(2, 0.0, 1.0);
  const auto pareto = random_pareto(10, b, 4);
  Dataset data;
  for (const auto& x : pareto.decision_set()) data.add({x, ObjectiveVector{0.0, 0.0}, 0});
  const auto plan = pareto_informed_samples(pareto, 10, data, b, 1);
  ASSERT_EQ(plan.points.size(), 10u);
  EXPECT_EQ(plan.random_fallbacks, 10u);
  for (const auto& p : plan.points) {
    EXPECT_TRUE(b.contains(p));
    EXPECT_FALSE(data.contains(p));
  }
  EXPECT_EQ(count_distinct(plan.points), 10u);
}

TEST(ParetoInformed, NearDuplicateCentroidIsReplacedByUnsampledMember) {
  const auto b = BoxBounds::uniform(2, -1.0, 1.0);
  const std::vector<DecisionVector> xs{{-0.5, -0.5}, {0.5, 0.5}, {0.6, 0.5}};
  const ParetoApproximation pareto(xs, {ObjectiveVector{0.0, 1.0}, ObjectiveVector{0.5, 0.5}, ObjectiveVector{1.0, 0.0}});
  Dataset data;
  data.add({xs[0], ObjectiveVector{0.0, 0.0}, 0});
  const auto plan = pareto_informed_samples(pareto, 2, data, b, 3);
  ASSERT_EQ(plan.points.size(), 2u);
  for (const auto& p : plan.points) EXPECT_FALSE(data.contains(p));
  EXPECT_EQ(plan.replaced, 1u);
}

TEST(ParetoInformed, CentroidsStayInsideTheBox) {
  Rng rng(6);
  const auto b = BoxBounds::uniform(5, -0.003, 0.003);
  for (int trial = 0; trial < 10; ++trial) {
    const auto pareto = random_pareto(40, b, 50 + trial);
    for (const auto& p : pareto_informed_samples(pareto, 8, Dataset{}, b, trial).points) EXPECT_TRUE(b.contains(p));
  }
}

}  // namespace
}  // namespace samo::sampling
