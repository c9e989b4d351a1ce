#include "samo/quarter_car.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "samo/errors.hpp"

namespace samo::problems {

void QuarterCarParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError(std::string("QuarterCarParams: ") + name + " must be positive");
    }
  };
  positive(sprung_mass, "sprung_mass");
  positive(unsprung_mass, "unsprung_mass");
  positive(suspension_stiffness, "suspension_stiffness");
  positive(tire_stiffness, "tire_stiffness");
  if (!(suspension_damping >= 0.0) || !std::isfinite(suspension_damping)) {
    throw DomainError("QuarterCarParams: suspension_damping must be non-negative");
  }
}

std::array<double, 5> QuarterCarParams::to_array() const {
  return {sprung_mass, unsprung_mass, suspension_stiffness, suspension_damping, tire_stiffness};
}

QuarterCarParams QuarterCarParams::from_array(const std::array<double, 5>& v) {
  return {v[0], v[1], v[2], v[3], v[4]};
}

void Excitation::validate() const {
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw DomainError("Excitation: amplitude must be non-negative");
  }
  if (!(frequency > 0.0) || !std::isfinite(frequency)) {
    throw DomainError("Excitation: frequency must be positive");
  }
}

double Excitation::road(double t) const {
  return amplitude * std::sin(2.0 * std::numbers::pi * frequency * t);
}

double Excitation::road_rate(double t) const {
  const double omega = 2.0 * std::numbers::pi * frequency;
  return amplitude * omega * std::cos(omega * t);
}

QuarterCarState quarter_car_rhs(const QuarterCarParams& p, const QuarterCarState& s, double road) {
  const double spring = p.suspension_stiffness * (s.body_position - s.wheel_position) +
                        p.suspension_damping * (s.body_velocity - s.wheel_velocity);
  const double tire = p.tire_stiffness * (road - s.wheel_position);
  return {s.body_velocity, -spring / p.sprung_mass, s.wheel_velocity,
          (spring + tire) / p.unsprung_mass};
}

double mechanical_energy(const QuarterCarParams& p, const QuarterCarState& s, double road) {
  const double deflection = s.body_position - s.wheel_position;
  const double tire = road - s.wheel_position;
  return 0.5 * p.sprung_mass * s.body_velocity * s.body_velocity +
         0.5 * p.unsprung_mass * s.wheel_velocity * s.wheel_velocity +
         0.5 * p.suspension_stiffness * deflection * deflection +
         0.5 * p.tire_stiffness * tire * tire;
}

namespace {

QuarterCarState axpy(const QuarterCarState& s, double h, const QuarterCarState& k) {
  return {s.body_position + h * k.body_position, s.body_velocity + h * k.body_velocity,
          s.wheel_position + h * k.wheel_position, s.wheel_velocity + h * k.wheel_velocity};
}

bool finite(const QuarterCarState& s) {
  return std::isfinite(s.body_position) && std::isfinite(s.body_velocity) &&
         std::isfinite(s.wheel_position) && std::isfinite(s.wheel_velocity);
}

}  // namespace

Trajectory simulate_quarter_car(const QuarterCarParams& params, const Excitation& excitation,
                                double t0, double te, double dt, const QuarterCarState& initial) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("simulate_quarter_car: dt must be > 0");
  if (!(te > t0)) throw ConfigError("simulate_quarter_car: need te > t0");
  params.validate();
  excitation.validate();

  const auto steps = static_cast<std::size_t>(std::llround((te - t0) / dt));
  if (steps == 0) throw ConfigError("simulate_quarter_car: horizon shorter than one step");

  Trajectory traj;
  traj.time.reserve(steps + 1);
  traj.wheel_load.reserve(steps + 1);
  traj.body_acceleration.reserve(steps + 1);
  traj.states.reserve(steps + 1);

  auto record = [&](double t, const QuarterCarState& s) {
    const double road = excitation.road(t);
    const auto deriv = quarter_car_rhs(params, s, road);
    traj.time.push_back(t);
    traj.wheel_load.push_back(params.tire_stiffness * (road - s.wheel_position));
    traj.body_acceleration.push_back(deriv.body_velocity);
    traj.states.push_back(s);
  };

  QuarterCarState s = initial;
  record(t0, s);
  for (std::size_t i = 0; i < steps; ++i) {
    // Grid times are computed from the index to avoid accumulated drift.
    const double t = t0 + static_cast<double>(i) * dt;
    const double tm = t + 0.5 * dt;
    const double tn = t0 + static_cast<double>(i + 1) * dt;
    const auto k1 = quarter_car_rhs(params, s, excitation.road(t));
    const auto k2 = quarter_car_rhs(params, axpy(s, 0.5 * dt, k1), excitation.road(tm));
    const auto k3 = quarter_car_rhs(params, axpy(s, 0.5 * dt, k2), excitation.road(tm));
    const auto k4 = quarter_car_rhs(params, axpy(s, dt, k3), excitation.road(tn));
    s = {s.body_position + dt / 6.0 * (k1.body_position + 2 * k2.body_position + 2 * k3.body_position + k4.body_position),
         s.body_velocity + dt / 6.0 * (k1.body_velocity + 2 * k2.body_velocity + 2 * k3.body_velocity + k4.body_velocity),
         s.wheel_position + dt / 6.0 * (k1.wheel_position + 2 * k2.wheel_position + 2 * k3.wheel_position + k4.wheel_position),
         s.wheel_velocity + dt / 6.0 * (k1.wheel_velocity + 2 * k2.wheel_velocity + 2 * k3.wheel_velocity + k4.wheel_velocity)};
    if (!finite(s)) {
      throw DivergenceError("simulate_quarter_car: non-finite state at step " +
                            std::to_string(i + 1) + " (t = " + std::to_string(tn) + " s)");
    }
    record(tn, s);
  }
  return traj;
}

double amplitude(std::span<const double> channel, std::size_t begin, std::size_t end) {
  if (begin >= end) throw EmptyInputError("amplitude: empty window");
  if (end > channel.size()) {
    throw DimensionError("amplitude: window end " + std::to_string(end) + " beyond channel of " +
                         std::to_string(channel.size()) + " samples");
  }
  const auto [lo, hi] = std::minmax_element(channel.begin() + static_cast<std::ptrdiff_t>(begin),
                                            channel.begin() + static_cast<std::ptrdiff_t>(end));
  return 0.5 * (*hi - *lo);
}

}  // namespace samo::problems
