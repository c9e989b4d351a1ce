#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "samo/problem.hpp"
#include "samo/random.hpp"

namespace samo::problems {
namespace {

TEST(TwoParaboloids, EvaluatesDistancesToOpposingCorners) {
  const auto p = make_analytic_problem("two-paraboloids");
  EXPECT_EQ(p.dimension(), 4u);
  EXPECT_EQ(p.bounds(), BoxBounds::uniform(4, -1.0, 1.0));
  const auto y = p.evaluate(DecisionVector{0.5, 0.5, 0.5, 0.5});
  EXPECT_DOUBLE_EQ(y[0], 0.0);
  EXPECT_DOUBLE_EQ(y[1], 4.0);
  const auto z = p.evaluate(DecisionVector{0.0, 0.0, 0.0, 0.0});
  EXPECT_DOUBLE_EQ(z[0], 1.0);
  EXPECT_DOUBLE_EQ(z[1], 1.0);
}

TEST(TwoParaboloids, ReferenceFrontLiesOnTheImageOfTheSegment) {
  const auto p = make_analytic_problem("two-paraboloids", 3);
  const auto front = p.reference_front(11);
  ASSERT_EQ(front.size(), 11u);
  for (std::size_t i = 0; i < front.size(); ++i) {
    const double t = -1.0 + 0.2 * static_cast<double>(i);
    const auto y = p.evaluate(DecisionVector{0.5 * t, 0.5 * t, 0.5 * t});
    EXPECT_NEAR(front[i][0], y[0], 1e-12);
    EXPECT_NEAR(front[i][1], y[1], 1e-12);
  }
}

TEST(Zdt1, OriginAndFront) {
  const auto p = make_analytic_problem("zdt1");
  EXPECT_EQ(p.dimension(), 30u);
  const auto y = p.evaluate(DecisionVector(std::vector<double>(30, 0.0)));
  EXPECT_DOUBLE_EQ(y[0], 0.0);
  EXPECT_DOUBLE_EQ(y[1], 1.0);
  std::vector<double> x(30, 0.0);
  x[0] = 0.25;
  const auto on_front = p.evaluate(DecisionVector(x));
  EXPECT_DOUBLE_EQ(on_front[1], 0.5);
  const auto front = p.reference_front(3);
  EXPECT_DOUBLE_EQ(front.front()[1], 1.0);
  EXPECT_DOUBLE_EQ(front.back()[0], 1.0);
  EXPECT_DOUBLE_EQ(front.back()[1], 0.0);
}

TEST(BraninPair, SecondObjectiveIsShiftedCopy) {
  const auto p = make_analytic_problem("branin-pair");
  EXPECT_EQ(p.dimension(), 2u);
  EXPECT_FALSE(p.has_reference_front());
  // Known minimiser of the Branin function.
  EXPECT_NEAR(branin(std::acos(-1.0), 2.275), 0.397887, 1e-6);
  const auto y = p.evaluate(DecisionVector{std::acos(-1.0) + 2.5, 2.275 + 2.5});
  EXPECT_NEAR(y[1], 0.397887, 1e-6);
  EXPECT_THROW(make_analytic_problem("branin-pair", 3), ConfigError);
}

TEST(Problems, UnknownNameAndWrongDimension) {
  EXPECT_THROW(make_problem("rosenbrock"), ConfigError);
  const auto p = make_analytic_problem("two-paraboloids");
  EXPECT_THROW(p.evaluate(DecisionVector{0.0, 0.0}), DimensionError);
}

class Mbs : public ::testing::Test {
 protected:
  QuarterCarBenchmark bench;
  std::vector<double> zeros = std::vector<double>(24, 0.0);
};

TEST_F(Mbs, NominalDesignIsPinned) {
  const auto y = bench.evaluate(DecisionVector(zeros));
  EXPECT_NEAR(y[0], 118.35427838922611, 1e-9 * 118.35);
  EXPECT_NEAR(y[1], 0.31151743687173894, 1e-9 * 0.3115);
  EXPECT_EQ(bench.parameters_for(DecisionVector(zeros)), QuarterCarParams{});

  // Independently: direct simulation of the nominal parameters, second half.
  const auto traj = simulate_quarter_car({}, Excitation{}, 0.0, 2.0, 1e-4);
  const auto half = (traj.size() - 1) / 2;
  EXPECT_DOUBLE_EQ(y[0], amplitude(traj.wheel_load, half, traj.size()));
  EXPECT_DOUBLE_EQ(y[1], amplitude(traj.body_acceleration, half, traj.size()));
  // And close to the steady-state frequency response.
  const double steady = testing::quarter_car_body_acceleration_amplitude(300, 40, 25000, 1500, 200000,
                                                                         0.001, 7.0);
  EXPECT_NEAR(y[1] / steady, 1.0, 0.05);
}

TEST_F(Mbs, DeterministicAndOutOfBoxRejected) {
  Rng rng(3);
  std::vector<double> x(24);
  for (auto& v : x) v = -0.003 + 0.006 * uniform01(rng);
  EXPECT_EQ(bench.evaluate(DecisionVector(x)), evaluate_mbs(DecisionVector(x)));
  x[5] = 0.0031;
  EXPECT_THROW(bench.evaluate(DecisionVector(x)), DomainError);
  EXPECT_THROW(bench.evaluate(DecisionVector{0.0}), DimensionError);
}

TEST_F(Mbs, ProjectionRowsHaveUnitL1NormAndSwingIsBounded) {
  const auto& P = bench.projection();
  ASSERT_EQ(P.rows(), 5);
  ASSERT_EQ(P.cols(), 24);
  for (Eigen::Index r = 0; r < 5; ++r) EXPECT_NEAR(P.row(r).lpNorm<1>(), 1.0, 1e-12);
  // The worst corner of the box moves each parameter by at most 15 %.
  std::vector<double> corner(24);
  for (std::size_t c = 0; c < 24; ++c) corner[c] = P(0, static_cast<Eigen::Index>(c)) > 0 ? 0.003 : -0.003;
  const auto p = bench.parameters_for(DecisionVector(corner));
  EXPECT_NEAR(p.sprung_mass, 300.0 * 1.15, 1e-9);
}

TEST_F(Mbs, NullSpaceDirectionsDoNotChangeObjectives) {
  const Eigen::MatrixXd kernel = bench.projection().fullPivLu().kernel();
  ASSERT_EQ(kernel.cols(), 19);
  Rng rng(11);
  std::vector<double> a(24), b(24);
  for (auto& v : a) v = -0.001 + 0.002 * uniform01(rng);
  const Eigen::VectorXd dir = kernel.col(0) / kernel.col(0).cwiseAbs().maxCoeff();
  for (std::size_t i = 0; i < 24; ++i) b[i] = a[i] + 0.001 * dir(static_cast<Eigen::Index>(i));
  ASSERT_NE(a, b);
  const auto ya = bench.evaluate(DecisionVector(a));
  const auto yb = bench.evaluate(DecisionVector(b));
  EXPECT_NEAR(ya[0], yb[0], 1e-9 * ya[0]);
  EXPECT_NEAR(ya[1], yb[1], 1e-9 * ya[1]);
}

TEST_F(Mbs, ObjectivesAreContinuous) {
  Rng rng(5);
  std::vector<double> x(24);
  for (auto& v : x) v = -0.002 + 0.004 * uniform01(rng);
  const auto y = bench.evaluate(DecisionVector(x));
  for (std::size_t i = 0; i < 24; i += 5) {
    auto xp = x;
    xp[i] += 1e-8;
    const auto yp = bench.evaluate(DecisionVector(xp));
    EXPECT_LT(std::abs(yp[0] - y[0]) / y[0], 1e-4);
    EXPECT_LT(std::abs(yp[1] - y[1]) / y[1], 1e-4);
  }
}

TEST_F(Mbs, WritesProjectionArtifact) {
  const auto dir = std::filesystem::temp_directory_path() / "samo_test_problem_artifacts";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  make_mbs_problem().write_artifacts(dir);
  EXPECT_TRUE(std::filesystem::exists(dir / "projection_matrix.csv"));
  std::filesystem::remove_all(dir);
}

TEST(MbsOptions, InvalidOptionsRejected) {
  QuarterCarBenchmark::Options o;
  o.dimension = 0;
  EXPECT_THROW(QuarterCarBenchmark{o}, ConfigError);
  o = {};
  o.max_relative_swing = 1.5;
  EXPECT_THROW(QuarterCarBenchmark{o}, ConfigError);
}

}  // namespace
}  // namespace samo::problems
