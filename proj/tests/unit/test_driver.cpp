#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "samo/pareto.hpp"
#include "samo/problem.hpp"
#include "samo/samo.hpp"
#include "samo/study.hpp"

namespace samo::driver {
namespace {

/// Small and fast: RBF with a fixed width and a short NSGA-II run.
SamoConfig quick_config() {
  SamoConfig cfg;
  cfg.budget = 40;
  cfg.batch_size = 10;
  cfg.h_min = 1e-12;
  cfg.surrogate = SurrogateKind::rbf;
  cfg.rbf.sigma = 0.5;
  cfg.population_size = 20;
  cfg.nsga2.generations = 20;
  cfg.seed = 5;
  return cfg;
}

const problems::Problem& paraboloids() {
  static const auto p = problems::make_analytic_problem("two-paraboloids", 3);
  return p;
}

TEST(CheckConvergence, ThresholdSemantics) {
  const std::vector<ObjectiveVector> a{{0.0, 1.0}, {1.0, 0.0}};
  const auto same = check_convergence(a, a, 2.0);
  EXPECT_TRUE(same.converged);
  EXPECT_EQ(same.h, 0.0);
  const std::vector<ObjectiveVector> b{{3.0, 5.0}, {4.0, 4.0}};
  const std::vector<ObjectiveVector> c{{3.0, 10.0}, {4.0, 9.0}};
  const auto apart = check_convergence(b, c, 2.0);
  EXPECT_FALSE(apart.converged);
  EXPECT_DOUBLE_EQ(apart.h, 5.0);
  EXPECT_THROW(check_convergence({}, a, 2.0), EmptyInputError);
}

TEST(SamoConfig, Validation) {
  auto cfg = quick_config();
  EXPECT_NO_THROW(cfg.validate());
  cfg.batch_size = 1;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = quick_config();
  cfg.batch_size = cfg.budget + 1;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = quick_config();
  cfg.h_min = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  EXPECT_EQ(parse_optimizer_kind("mgda-multistart"), OptimizerKind::mgda);
  EXPECT_EQ(parse_surrogate_kind("ann"), SurrogateKind::mlp);
  EXPECT_THROW(parse_surrogate_kind("kriging"), ConfigError);
}

TEST(SamoRun, InfiniteThresholdStopsAtFirstComparison) {
  auto cfg = quick_config();
  cfg.h_min = std::numeric_limits<double>::infinity();
  const auto r = samo_run(paraboloids(), cfg);
  EXPECT_EQ(r.termination, Termination::converged);
  ASSERT_EQ(r.rounds.size(), 2u);
  EXPECT_FALSE(r.rounds[0].hausdorff.has_value());
  EXPECT_TRUE(r.rounds[1].hausdorff.has_value());
}

TEST(SamoRun, BatchEqualToBudgetGivesTwoRounds) {
  auto cfg = quick_config();
  cfg.budget = 10;
  const auto r = samo_run(paraboloids(), cfg);
  EXPECT_EQ(r.rounds.size(), 2u);
  EXPECT_EQ(r.evaluations(), 20u);
  EXPECT_EQ(r.termination, Termination::budget);
}

TEST(SamoRun, EvaluationAccountingAndTruncation) {
  auto cfg = quick_config();
  cfg.budget = 35;
  std::size_t observed = 0;
  const auto r = samo_run(paraboloids(), cfg, [&](const RoundRecord& round, const Dataset& data) {
    observed += round.new_samples.size();
    EXPECT_EQ(round.dataset_size, data.size());
  });
  EXPECT_EQ(observed, r.evaluations());
  EXPECT_LE(r.evaluations(), cfg.budget + cfg.batch_size);
  // Rounds j = 0..4 ((j - 1) s < S admits j <= 4); the last one is cut to
  // the remaining S + s - |D| = 5 evaluations.
  ASSERT_EQ(r.rounds.size(), 5u);
  for (std::size_t j = 0; j + 1 < r.rounds.size(); ++j) EXPECT_EQ(r.rounds[j].new_samples.size(), 10u);
  EXPECT_EQ(r.rounds.back().new_samples.size(), 5u);
  EXPECT_EQ(r.evaluations(), 45u);
}

TEST(SamoRun, FrontsAreNonDominatedAndImproveOnTheInitialDesign) {
  const auto r = samo_run(paraboloids(), quick_config());
  auto mutually_nondominated = [](const std::vector<ObjectiveVector>& f) {
    for (const auto& a : f) {
      for (const auto& b : f) {
        if (dominates(a, b)) return false;
      }
    }
    return true;
  };
  for (const auto& round : r.rounds) EXPECT_TRUE(mutually_nondominated(round.front.front()));
  EXPECT_TRUE(mutually_nondominated(r.sample_front.front()));
  for (const auto& s : r.rounds.front().new_samples) {
    for (const auto& f : r.sample_front.front()) EXPECT_FALSE(dominates(s.y, f));
  }
  // The sample front is exactly the non-dominated subset of the dataset.
  std::vector<testing::Point> pts;
  for (const auto& s : r.dataset.samples()) pts.push_back(s.y.data());
  std::vector<std::size_t> all(pts.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  EXPECT_EQ(r.sample_front.size(), testing::brute_force_nondominated(pts, all).size());
}

TEST(SamoRun, SeededRunsAreReproducible) {
  const auto a = samo_run(paraboloids(), quick_config());
  const auto b = samo_run(paraboloids(), quick_config());
  ASSERT_EQ(a.rounds.size(), b.rounds.size());
  for (std::size_t j = 0; j < a.rounds.size(); ++j) {
    EXPECT_EQ(a.rounds[j].front.front(), b.rounds[j].front.front());
    EXPECT_EQ(a.rounds[j].hausdorff, b.rounds[j].hausdorff);
  }
  ASSERT_EQ(a.dataset.size(), b.dataset.size());
  for (std::size_t i = 0; i < a.dataset.size(); ++i) EXPECT_EQ(a.dataset[i].x, b.dataset[i].x);
  auto parallel = quick_config();
  parallel.jobs = 3;
  const auto c = samo_run(paraboloids(), parallel);
  for (std::size_t i = 0; i < a.dataset.size(); ++i) EXPECT_EQ(a.dataset[i].y, c.dataset[i].y);
}

TEST(SamoRun, TrainingFailureEndsRunWithPartialRecord) {
  auto cfg = quick_config();
  cfg.surrogate = SurrogateKind::mlp;
  cfg.batch_size = 4;  // fewer samples than the network needs
  std::size_t calls = 0;
  const auto r = samo_run(paraboloids(), cfg, [&](const RoundRecord&, const Dataset&) { ++calls; });
  EXPECT_EQ(r.termination, Termination::error);
  EXPECT_NE(r.error.find("round 0"), std::string::npos);
  EXPECT_EQ(r.evaluations(), 4u);
  EXPECT_EQ(calls, 1u);
  EXPECT_FALSE(r.sample_front.empty());
}

TEST(SamoRun, MultistartDescentAsOptimizer) {
  auto cfg = quick_config();
  cfg.optimizer = OptimizerKind::mgda;
  cfg.population_size = 15;
  cfg.budget = 20;
  const auto r = samo_run(paraboloids(), cfg);
  EXPECT_NE(r.termination, Termination::error) << r.error;
  for (const auto& round : r.rounds) {
    EXPECT_FALSE(round.front.empty());
    EXPECT_LE(round.front.size(), 15u);
  }
}

TEST(Quality, IgdAndNormalisation) {
  const std::vector<ObjectiveVector> ref{{0.0, 2.0}, {1.0, 1.0}, {2.0, 0.0}};
  const std::vector<ObjectiveVector> approx{{0.0, 2.0}, {2.0, 0.0}};
  EXPECT_NEAR(igd(ref, approx), std::sqrt(2.0) / 3.0, 1e-12);
  const auto q = normalized_quality(ref, approx);
  EXPECT_NEAR(q.igd, std::sqrt(0.5) / 3.0, 1e-12);
  EXPECT_NEAR(q.hausdorff, std::sqrt(0.5), 1e-12);
}

TEST(Study, OneSizeOneRow) {
  StudyOptions options;
  options.sizes = {10};
  options.surrogates = {SurrogateKind::rbf};
  std::size_t seen = 0;
  const auto rows = sample_size_study(paraboloids(), options, quick_config(),
                                      [&](const StudyCell& cell, const RunRecord&) {
                                        EXPECT_EQ(cell.batch_size, 10u);
                                        ++seen;
                                      });
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(seen, 1u);
  EXPECT_EQ(rows[0].status, Termination::budget);
  ASSERT_TRUE(rows[0].igd.has_value());
  EXPECT_GT(*rows[0].igd, 0.0);
  EXPECT_NEAR(rows[0].per_round_time * static_cast<double>(rows[0].rounds), rows[0].total_time, 1e-9);
}

TEST(Study, FailingCellDoesNotStopTheStudy) {
  StudyOptions options;
  options.sizes = {4, 10};
  options.surrogates = {SurrogateKind::mlp};
  auto cfg = quick_config();
  cfg.mlp.epochs = 20;
  const auto rows = sample_size_study(paraboloids(), options, cfg);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].status, Termination::error);
  EXPECT_FALSE(rows[0].error.empty());
  EXPECT_NE(rows[1].status, Termination::error);
}

}  // namespace
}  // namespace samo::driver
