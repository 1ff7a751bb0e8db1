#pragma once

#include <array>
#include <stdexcept>

#include <Eigen/Dense>

namespace bcuav::plant {

// Frames: inertial ENU (x east, y north, z up), body FLU (x forward, y left,
// z up). Attitude is ZYX Euler roll/pitch/yaw, R = Rz(yaw) Ry(pitch) Rx(roll).
// With this convention a positive pitch tilts thrust toward +x body (nose down).

using Vec3 = Eigen::Vector3d;

/// Rotor angular speeds in rad/s. Layout, X configuration, arm at 45 degrees:
///   0 front-right, 1 rear-left   (reaction torque +z)
///   2 front-left,  3 rear-right  (reaction torque -z)
using RotorSpeeds = std::array<double, 4>;

struct QuadParams {
  double mass = 1.2;                 // kg
  Vec3 inertia{0.0123, 0.0123, 0.0224};  // kg m^2, diagonal
  double arm_length = 0.2;           // m, center to rotor
  double thrust_coeff = 1.5e-5;      // N / (rad/s)^2
  double torque_coeff = 2.5e-7;      // N m / (rad/s)^2
  double max_rotor_speed = 900.0;    // rad/s
  double gravity = 9.81;             // m/s^2
  double linear_drag = 0.25;         // N s / m

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  double max_thrust() const { return 4.0 * thrust_coeff * max_rotor_speed * max_rotor_speed; }
};

struct QuadState {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  Vec3 attitude = Vec3::Zero();    // roll, pitch, yaw
  Vec3 body_rates = Vec3::Zero();  // p, q, r

  double roll() const { return attitude.x(); }
  double pitch() const { return attitude.y(); }
  double yaw() const { return attitude.z(); }
};

struct StateDerivative {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  Vec3 attitude = Vec3::Zero();
  Vec3 body_rates = Vec3::Zero();
};

/// Collective thrust along body z and body torques.
struct Wrench {
  double thrust = 0.0;
  Vec3 torque = Vec3::Zero();
};

class GimbalProximity : public std::runtime_error {
 public:
  GimbalProximity() : std::runtime_error("pitch within 1e-3 rad of +-pi/2") {}
};

inline constexpr double kGimbalMargin = 1e-3;

/// Wraps into (-pi, pi].
double wrap_angle(double angle);

Eigen::Matrix3d rotation(const Vec3& attitude);

/// Forward rotor model: thrust and torques produced by the given speeds.
Wrench rotor_wrench(const RotorSpeeds& speeds, const QuadParams& params);

/// Speed at which four equal rotors carry the vehicle weight.
double hover_rotor_speed(const QuadParams& params);

StateDerivative derivative(const QuadState& state, const RotorSpeeds& speeds, const QuadParams& params);

/// One RK4 step with rotor speeds held constant; angles re-wrapped afterwards.
QuadState step(const QuadState& state, const RotorSpeeds& speeds, const QuadParams& params, double dt);

/// Translational plus rotational kinetic energy and potential energy.
double mechanical_energy(const QuadState& state, const QuadParams& params);

}  // namespace bcuav::plant
