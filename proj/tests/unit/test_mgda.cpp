#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "samo/differentiable.hpp"
#include "samo/mgda.hpp"
#include "samo/pareto.hpp"
#include "samo/random.hpp"

namespace samo::mgda {
namespace {

/// f1 = |x - a|^2, f2 = |x + a|^2 with a = (0.5, ..., 0.5).
class Paraboloids final : public DifferentiableMap {
 public:
  explicit Paraboloids(std::size_t n) : a_(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 0.5)) {}
  std::size_t input_dimension() const override { return static_cast<std::size_t>(a_.size()); }
  std::size_t output_dimension() const override { return 2; }
  Eigen::VectorXd value(const Eigen::VectorXd& x) const override {
    return Eigen::Vector2d((x - a_).squaredNorm(), (x + a_).squaredNorm());
  }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const override {
    Eigen::MatrixXd j(2, x.size());
    j.row(0) = 2.0 * (x - a_).transpose();
    j.row(1) = 2.0 * (x + a_).transpose();
    return j;
  }

 private:
  Eigen::VectorXd a_;
};

class SquaredNorm final : public DifferentiableMap {
 public:
  std::size_t input_dimension() const override { return 3; }
  std::size_t output_dimension() const override { return 1; }
  Eigen::VectorXd value(const Eigen::VectorXd& x) const override { return Eigen::VectorXd::Constant(1, x.squaredNorm()); }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const override { return 2.0 * x.transpose(); }
};

/// Distance from y to the segment {t a : t in [-1, 1]}.
double distance_to_segment(const DecisionVector& y) {
  const double n = static_cast<double>(y.size());
  double dot = 0.0;
  for (double v : y) dot += 0.5 * v;
  const double t = std::clamp(dot / (0.25 * n), -1.0, 1.0);
  double s = 0.0;
  for (double v : y) s += (v - 0.5 * t) * (v - 0.5 * t);
  return std::sqrt(s);
}

Eigen::MatrixXd random_jacobian(Rng& rng, Eigen::Index k, Eigen::Index n) {
  Eigen::MatrixXd j(k, n);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) j(r, c) = standard_normal(rng);
  }
  return j;
}

void expect_on_simplex(const Eigen::VectorXd& w) {
  EXPECT_NEAR(w.sum(), 1.0, 1e-10);
  EXPECT_GE(w.minCoeff(), 0.0);
}

TEST(CommonDescent, OpposingGradientsAreCritical) {
  Eigen::MatrixXd j(2, 3);
  j << 1.0, -2.0, 0.5,  //
      -1.0, 2.0, -0.5;
  const auto step = common_descent_direction(j);
  EXPECT_NEAR(step.weights(0), 0.5, 1e-12);
  EXPECT_NEAR(step.norm, 0.0, 1e-12);
  EXPECT_NEAR(kkt_residual(j), 0.0, 1e-12);
}

TEST(CommonDescent, IdenticalGradients) {
  Eigen::MatrixXd j(2, 2);
  j << 3.0, 4.0,  //
      3.0, 4.0;
  const auto step = common_descent_direction(j);
  EXPECT_NEAR(step.weights(0), 0.5, 1e-12);
  EXPECT_NEAR(step.direction(0), -3.0, 1e-12);
  EXPECT_NEAR(step.direction(1), -4.0, 1e-12);
  EXPECT_NEAR(kkt_residual(j), 5.0, 1e-12);
}

TEST(CommonDescent, TwoObjectivesMatchClosedForm) {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const auto j = random_jacobian(rng, 2, 4);
    const Eigen::VectorXd g1 = j.row(0).transpose(), g2 = j.row(1).transpose();
    const double w = std::clamp((g2 - g1).dot(g2) / (g1 - g2).squaredNorm(), 0.0, 1.0);
    const double expected = (w * g1 + (1 - w) * g2).norm();
    EXPECT_NEAR(kkt_residual(j), expected, 1e-10);
    const auto step = common_descent_direction(j);
    expect_on_simplex(step.weights);
    EXPECT_NEAR(step.norm, expected, 1e-10);
  }
}

TEST(CommonDescent, ThreeObjectivesMatchGridSearch) {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto j = random_jacobian(rng, 3, 2 + trial % 4);
    std::vector<testing::Point> grads(3);
    for (Eigen::Index r = 0; r < 3; ++r) {
      for (Eigen::Index c = 0; c < j.cols(); ++c) grads[static_cast<std::size_t>(r)].push_back(j(r, c));
    }
    const auto [oracle, w] = testing::simplex_grid_search(grads, 1e-3);
    const auto step = common_descent_direction(j);
    expect_on_simplex(step.weights);
    EXPECT_LE(step.norm, oracle + 1e-9);
    EXPECT_NEAR(step.norm, oracle, 1e-3);
  }
}

TEST(CommonDescent, DirectionDescendsEveryObjective) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto j = random_jacobian(rng, 2 + trial % 3, 6);
    const auto step = common_descent_direction(j);
    if (step.norm <= 1e-6) continue;
    EXPECT_LE((j * step.direction).maxCoeff(), 1e-8 * step.norm);
    EXPECT_NEAR((j.transpose() * step.weights + step.direction).norm(), 0.0, 1e-10);
  }
}

TEST(SimplexQp, FrankWolfeObjectiveNonIncreasing) {
  Rng rng(4);
  const auto j = random_jacobian(rng, 5, 3);
  const auto r = solve_simplex_qp(j * j.transpose());
  ASSERT_GE(r.objective.size(), 2u);
  for (std::size_t i = 1; i < r.objective.size(); ++i) EXPECT_LE(r.objective[i], r.objective[i - 1] + 1e-14);
  EXPECT_LT(r.gap, 1e-10 * std::max(1.0, (j * j.transpose()).diagonal().maxCoeff()));
  expect_on_simplex(r.weights);
}

TEST(MgdaRun, ConvergesOntoTheParetoSegment) {
  const Paraboloids model(4);
  const auto bounds = BoxBounds::uniform(4, -1.0, 1.0);
  Rng rng(5);
  MgdaConfig cfg;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> x0(4);
    for (auto& v : x0) v = 2 * uniform01(rng) - 1;
    const auto run = mgda_run(model, DecisionVector(x0), bounds, cfg);
    EXPECT_TRUE(run.converged);
    EXPECT_LE(run.iterations, 10000u);
    EXPECT_LT(distance_to_segment(run.x), 1e-4);
  }
}

TEST(MgdaRun, CriticalStartReturnsAfterOneIteration) {
  const Paraboloids model(3);
  const DecisionVector x0{0.1, 0.1, 0.1};
  const auto run = mgda_run(model, x0, BoxBounds::uniform(3, -1.0, 1.0), MgdaConfig{});
  EXPECT_TRUE(run.converged);
  EXPECT_EQ(run.iterations, 1u);
  EXPECT_EQ(run.x, x0);
}

TEST(MgdaRun, SingleObjectiveIsGradientDescent) {
  const SquaredNorm model;
  const auto run = mgda_run(model, DecisionVector{0.9, -0.4, 0.2}, BoxBounds::uniform(3, -1.0, 1.0), MgdaConfig{});
  EXPECT_TRUE(run.converged);
  for (double v : run.x) EXPECT_NEAR(v, 0.0, 1e-6);
}

TEST(MgdaRun, WeightedObjectiveDecreasesAlongTrace) {
  const Paraboloids model(2);
  MgdaConfig cfg;
  cfg.learning_rate = 0.01;
  cfg.keep_traces = true;
  const auto run = mgda_run(model, DecisionVector{0.9, -0.8}, BoxBounds::uniform(2, -1.0, 1.0), cfg);
  ASSERT_GE(run.trace.size(), 2u);
  for (std::size_t i = 1; i < run.trace.size(); ++i) {
    EXPECT_LE(std::max(run.trace[i].objectives[0], run.trace[i].objectives[1]),
              std::max(run.trace[i - 1].objectives[0], run.trace[i - 1].objectives[1]) + 1e-12);
  }
}

TEST(MgdaRun, NonFiniteGradientRaisesWithTrace) {
  class Broken final : public DifferentiableMap {
   public:
    std::size_t input_dimension() const override { return 1; }
    std::size_t output_dimension() const override { return 2; }
    Eigen::VectorXd value(const Eigen::VectorXd& x) const override { return Eigen::Vector2d(x(0), -x(0)); }
    Eigen::MatrixXd jacobian(const Eigen::VectorXd&) const override {
      return Eigen::Vector2d(std::numeric_limits<double>::quiet_NaN(), 1.0);
    }
  };
  EXPECT_THROW(mgda_run(Broken{}, DecisionVector{0.0}, BoxBounds::uniform(1, -1.0, 1.0), MgdaConfig{}), IterationError);
}

TEST(Multistart, CoversTheParetoSegment) {
  const Paraboloids model(4);
  const auto bounds = BoxBounds::uniform(4, -1.0, 1.0);
  MgdaConfig cfg;
  const auto r = multistart_mgda(model, bounds, cfg);
  EXPECT_GE(r.converged, 90u);
  EXPECT_EQ(r.converged + r.dropped, 100u);
  const auto& front = r.pareto.front();
  for (std::size_t i = 0; i < front.size(); ++i) {
    EXPECT_LT(distance_to_segment(r.pareto.decision_set()[i]), 1e-3);
    for (std::size_t j = 0; j < front.size(); ++j) EXPECT_FALSE(dominates(front[j], front[i]));
  }
  cfg.starts = 1;
  EXPECT_LE(multistart_mgda(model, bounds, cfg).pareto.size(), 1u);
}

TEST(Multistart, ParallelMatchesSerial) {
  const Paraboloids model(3);
  const auto bounds = BoxBounds::uniform(3, -1.0, 1.0);
  MgdaConfig cfg;
  cfg.starts = 12;
  const auto a = multistart_mgda(model, bounds, cfg, 1);
  const auto b = multistart_mgda(model, bounds, cfg, 3);
  EXPECT_EQ(a.pareto.decision_set(), b.pareto.decision_set());
}

TEST(MgdaConfig, Validation) {
  MgdaConfig cfg;
  cfg.learning_rate = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.tolerance = -1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

}  // namespace
}  // namespace samo::mgda
