#pragma once

#include <limits>

#include "bcuav/control/pid.hpp"
#include "bcuav/plant/quadrotor.hpp"

namespace bcuav::control {

/// Desired attitude in the plant's Euler convention plus collective thrust.
struct AttitudeSetpoint {
  double roll = 0.0;   // rad
  double pitch = 0.0;  // rad
  double yaw = 0.0;    // rad
  double thrust = 0.0; // N
};

struct SetpointLimits {
  double max_tilt = 0.35;    // rad, applies to |roll| and |pitch|
  double max_thrust = 30.0;  // N
};

/// Small-angle inverse solution from desired inertial acceleration to
/// attitude and thrust:
///   pitch = (ax cos(yaw) + ay sin(yaw)) / g
///   roll  = (ax sin(yaw) - ay cos(yaw)) / g
///   thrust = m (g + az)
/// Angles are clamped to the tilt limit and thrust to [0, max_thrust].
AttitudeSetpoint inverse_solution(const plant::Vec3& accel, double yaw, double mass, double gravity,
                                  const SetpointLimits& limits);

AttitudeSetpoint clamp_setpoint(AttitudeSetpoint setpoint, const SetpointLimits& limits);

struct AttitudeGains {
  PidGains roll{4.0, 0.0, 0.0};
  PidGains pitch{4.0, 0.0, 0.0};
  PidGains yaw{1.0, 0.0, 0.0};
};

struct AttitudeLoopState {
  PidState roll;
  PidState pitch;
  PidState yaw;
};

struct AttitudeLoopStep {
  plant::Vec3 torque = plant::Vec3::Zero();
  AttitudeLoopState state;
};

/// Three independent PID loops on roll, pitch and wrapped yaw error.
AttitudeLoopStep attitude_loop(const AttitudeSetpoint& setpoint, const plant::QuadState& state,
                               const AttitudeGains& gains, const AttitudeLoopState& loop, double dt,
                               double integral_limit = std::numeric_limits<double>::infinity());

}  // namespace bcuav::control
