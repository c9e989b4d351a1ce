#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "samo/mlp.hpp"
#include "samo/problem.hpp"
#include "samo/random.hpp"
#include "samo/sampling.hpp"

namespace samo::surrogate {
namespace {

Dataset sample_problem(const problems::Problem& p, std::size_t n, std::uint64_t seed) {
  Dataset data;
  for (const auto& x : sampling::latin_hypercube(n, p.bounds(), seed).points) data.add({x, p.evaluate(x), 0});
  return data;
}

TEST(Mlp, ArchitectureAndParameterCount) {
  const auto p = problems::make_analytic_problem("two-paraboloids");
  TrainConfig cfg;
  cfg.epochs = 5;
  const auto model = fit_mlp(sample_problem(p, 10, 1), cfg);
  ASSERT_EQ(model.layers().size(), 3u);
  EXPECT_EQ(model.layers()[0].weight.rows(), 64);
  EXPECT_EQ(model.layers()[0].weight.cols(), 4);
  EXPECT_EQ(model.layers()[2].weight.rows(), 2);
  EXPECT_EQ(model.parameter_count(), (4u * 64 + 64) + (64u * 64 + 64) + (64u * 2 + 2));
  EXPECT_EQ(model.history().size(), 6u);
}

TEST(Mlp, LearnsALinearMap) {
  Rng rng(3);
  Dataset data;
  for (int i = 0; i < 60; ++i) {
    const DecisionVector x{2 * uniform01(rng) - 1, 2 * uniform01(rng) - 1, 2 * uniform01(rng) - 1};
    data.add({x, ObjectiveVector{x[0] - 2 * x[1] + 0.5 * x[2], 3 * x[2] + x[0]}, 0});
  }
  TrainConfig cfg;
  cfg.epochs = 2000;
  cfg.seed = 4;
  const auto model = fit_mlp(data, cfg);
  EXPECT_LT(model.history()[model.best_epoch()].validation, 1e-3);
}

TEST(Mlp, SeededTrainingIsBitwiseReproducible) {
  const auto p = problems::make_analytic_problem("two-paraboloids");
  const auto data = sample_problem(p, 20, 2);
  TrainConfig cfg;
  cfg.epochs = 300;
  cfg.seed = 9;
  const auto a = fit_mlp(data, cfg);
  const auto b = fit_mlp(data, cfg);
  for (std::size_t l = 0; l < a.layers().size(); ++l) {
    EXPECT_EQ(a.layers()[l].weight, b.layers()[l].weight);
    EXPECT_EQ(a.layers()[l].bias, b.layers()[l].bias);
  }
  const DecisionVector q{0.1, 0.2, -0.3, 0.4};
  EXPECT_EQ(a.predict(q), a.predict(q));
  cfg.seed = 10;
  EXPECT_NE(fit_mlp(data, cfg).layers()[0].weight, a.layers()[0].weight);
}

TEST(Mlp, TrainingReducesLossOnTheSuspensionBenchmark) {
  const auto p = problems::make_mbs_problem();
  const auto data = sample_problem(p, 20, 5);
  const auto model = fit_mlp(data, TrainConfig{});
  const auto& h = model.history();
  EXPECT_LE(h[model.best_epoch()].train * 10.0, h.front().train);
  EXPECT_LE(h[model.best_epoch()].validation, h.front().validation);
  for (const auto& e : h) EXPECT_TRUE(std::isfinite(e.validation));
}

TEST(Mlp, JacobianMatchesFiniteDifferences) {
  const auto p = problems::make_analytic_problem("two-paraboloids");
  TrainConfig cfg;
  cfg.epochs = 500;
  const auto model = fit_mlp(sample_problem(p, 30, 6), cfg);
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(4);
    for (auto& v : x) v = 2.0 * uniform01(rng) - 1.0;
    const auto fd = testing::central_difference_jacobian(
        [&](const std::vector<double>& z) {
          const Eigen::VectorXd v = model.value(Eigen::Map<const Eigen::VectorXd>(z.data(), 4));
          return std::vector<double>(v.data(), v.data() + v.size());
        },
        x, 1e-5);
    const auto jac = model.input_jacobian(DecisionVector(x));
    for (int k = 0; k < 2; ++k) {
      for (int j = 0; j < 4; ++j) EXPECT_NEAR(jac(k, j), fd[k][j], 1e-4 * std::max(1.0, std::abs(fd[k][j])));
    }
  }
}

TEST(Mlp, JsonRoundTripPreservesPredictions) {
  const auto p = problems::make_analytic_problem("two-paraboloids");
  TrainConfig cfg;
  cfg.epochs = 50;
  const auto model = fit_mlp(sample_problem(p, 12, 7), cfg);
  const auto back = model_from_json(model.to_json());
  EXPECT_EQ(back->kind(), "mlp");
  const DecisionVector q{0.3, -0.2, 0.9, 0.0};
  const auto a = model.predict(q), b = back->predict(q);
  EXPECT_NEAR(a[0], b[0], 1e-12 * std::max(1.0, std::abs(a[0])));
  EXPECT_NEAR(a[1], b[1], 1e-12 * std::max(1.0, std::abs(a[1])));
}

TEST(Mlp, RejectsTooFewSamplesAndBadConfig) {
  const auto p = problems::make_analytic_problem("two-paraboloids");
  EXPECT_THROW(fit_mlp(sample_problem(p, 4, 1), TrainConfig{}), Error);
  TrainConfig cfg;
  cfg.validation_fraction = 1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.learning_rate = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Mlp, DivergentTrainingNamesTheEpoch) {
  const auto p = problems::make_analytic_problem("two-paraboloids");
  TrainConfig cfg;
  cfg.learning_rate = 1e300;
  cfg.epochs = 50;
  try {
    fit_mlp(sample_problem(p, 20, 1), cfg);
    FAIL() << "expected TrainingError";
  } catch (const TrainingError& e) {
    EXPECT_NE(std::string(e.what()).find("epoch"), std::string::npos);
  }
}

}  // namespace
}  // namespace samo::surrogate
