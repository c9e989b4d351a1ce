#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace samo::problems {

/// Linear two-mass quarter-car model (body on spring/damper, wheel on tire
/// spring). SI units throughout.
struct QuarterCarParams {
  double sprung_mass = 300.0;             // kg
  double unsprung_mass = 40.0;            // kg
  double suspension_stiffness = 25000.0;  // N/m
  double suspension_damping = 1500.0;     // N s/m
  double tire_stiffness = 200000.0;       // N/m

  /// Throws DomainError unless masses and stiffnesses are positive and the
  /// damping is non-negative.
  void validate() const;

  std::array<double, 5> to_array() const;
  static QuarterCarParams from_array(const std::array<double, 5>& values);

  friend bool operator==(const QuarterCarParams&, const QuarterCarParams&) = default;
};

/// Sinusoidal road displacement z_r(t) = amplitude * sin(2 pi frequency t).
struct Excitation {
  double amplitude = 0.001;  // m
  double frequency = 7.0;    // Hz

  void validate() const;
  double road(double t) const;
  double road_rate(double t) const;

  friend bool operator==(const Excitation&, const Excitation&) = default;
};

/// Body position/velocity and wheel position/velocity.
struct QuarterCarState {
  double body_position = 0.0;
  double body_velocity = 0.0;
  double wheel_position = 0.0;
  double wheel_velocity = 0.0;
};

struct Trajectory {
  std::vector<double> time;
  std::vector<double> wheel_load;         // F_z = k_t (z_r - z_u), N
  std::vector<double> body_acceleration;  // m/s^2
  std::vector<QuarterCarState> states;

  std::size_t size() const noexcept { return time.size(); }
};

/// Time derivative of the state under road input z_r.
QuarterCarState quarter_car_rhs(const QuarterCarParams& p, const QuarterCarState& s, double road);

/// Kinetic plus spring potential energy (tire spring measured against the
/// road height).
double mechanical_energy(const QuarterCarParams& p, const QuarterCarState& s, double road);

/// Classical RK4 on the uniform grid t0, t0 + dt, ..., te. Starts at rest
/// unless an initial state is given. Throws ConfigError for dt <= 0 or
/// te <= t0 and DivergenceError naming the step when the state blows up.
Trajectory simulate_quarter_car(const QuarterCarParams& params, const Excitation& excitation,
                                double t0, double te, double dt,
                                const QuarterCarState& initial = {});

/// Half the peak-to-peak range of channel[begin, end).
double amplitude(std::span<const double> channel, std::size_t begin, std::size_t end);
inline double amplitude(std::span<const double> channel) {
  return amplitude(channel, 0, channel.size());
}

}  // namespace samo::problems
