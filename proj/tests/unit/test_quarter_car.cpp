#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "samo/errors.hpp"
#include "samo/quarter_car.hpp"

namespace samo::problems {
namespace {

TEST(QuarterCar, RestStaysAtRestWithoutExcitation) {
  const auto traj = simulate_quarter_car({}, Excitation{0.0, 7.0}, 0.0, 1.0, 1e-3);
  ASSERT_EQ(traj.size(), 1001u);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    EXPECT_EQ(traj.wheel_load[i], 0.0);
    EXPECT_EQ(traj.body_acceleration[i], 0.0);
  }
  EXPECT_EQ(amplitude(traj.wheel_load), 0.0);
}

TEST(QuarterCar, UndampedFreeMotionConservesEnergy) {
  QuarterCarParams p;
  p.suspension_damping = 0.0;
  const QuarterCarState start{0.01, 0.0, -0.002, 0.1};
  const Excitation flat{0.0, 7.0};
  const auto traj = simulate_quarter_car(p, flat, 0.0, 10.0, 1e-4, start);
  const double e0 = mechanical_energy(p, start, 0.0);
  double worst = 0.0;
  for (const auto& s : traj.states) worst = std::max(worst, std::abs(mechanical_energy(p, s, 0.0) - e0));
  EXPECT_LT(worst / e0, 1e-6);
}

TEST(QuarterCar, SteadyStateMatchesFrequencyResponse) {
  const QuarterCarParams p;
  const Excitation exc{0.001, 7.0};
  const auto traj = simulate_quarter_car(p, exc, 0.0, 10.0, 1e-4);
  const auto half = traj.size() / 2;
  const double simulated = amplitude(traj.body_acceleration, half, traj.size());
  const double expected = testing::quarter_car_body_acceleration_amplitude(
      p.sprung_mass, p.unsprung_mass, p.suspension_stiffness, p.suspension_damping, p.tire_stiffness,
      exc.amplitude, exc.frequency);
  EXPECT_NEAR(simulated / expected, 1.0, 0.01);
}

TEST(QuarterCar, HalvingStepBarelyChangesAmplitudes) {
  const QuarterCarParams p;
  const Excitation exc;
  const auto coarse = simulate_quarter_car(p, exc, 0.0, 2.0, 1e-4);
  const auto fine = simulate_quarter_car(p, exc, 0.0, 2.0, 5e-5);
  const double a = amplitude(coarse.wheel_load, coarse.size() / 2, coarse.size());
  const double b = amplitude(fine.wheel_load, fine.size() / 2, fine.size());
  EXPECT_LT(std::abs(a - b) / b, 1e-6);
  const double c = amplitude(coarse.body_acceleration, coarse.size() / 2, coarse.size());
  const double d = amplitude(fine.body_acceleration, fine.size() / 2, fine.size());
  EXPECT_LT(std::abs(c - d) / d, 1e-6);
}

TEST(QuarterCar, HugeStepDivergesWithStepIndex) {
  try {
    simulate_quarter_car({}, Excitation{}, 0.0, 200.0, 0.1);
    FAIL() << "expected DivergenceError";
  } catch (const DivergenceError& e) {
    EXPECT_NE(std::string(e.what()).find("step"), std::string::npos);
  }
}

TEST(QuarterCar, RejectsBadSetup) {
  EXPECT_THROW(simulate_quarter_car({}, Excitation{}, 0.0, 1.0, 0.0), ConfigError);
  EXPECT_THROW(simulate_quarter_car({}, Excitation{}, 1.0, 1.0, 1e-3), ConfigError);
  QuarterCarParams negative_mass;
  negative_mass.sprung_mass = -1.0;
  EXPECT_THROW(simulate_quarter_car(negative_mass, Excitation{}, 0.0, 1.0, 1e-3), DomainError);
  EXPECT_THROW(simulate_quarter_car({}, Excitation{0.001, 0.0}, 0.0, 1.0, 1e-3), DomainError);
}

TEST(Amplitude, HalfPeakToPeak) {
  const std::vector<double> v{-2.0, 0.0, 4.0};
  EXPECT_DOUBLE_EQ(amplitude(v), 3.0);
  EXPECT_DOUBLE_EQ(amplitude(v, 0, 2), 1.0);
  EXPECT_THROW(amplitude(v, 2, 2), EmptyInputError);
  EXPECT_THROW(amplitude(v, 0, 4), DimensionError);
}

}  // namespace
}  // namespace samo::problems
