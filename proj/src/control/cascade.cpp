#include "bcuav/control/cascade.hpp"

#include <algorithm>
#include <cmath>

namespace bcuav::control {

AttitudeSetpoint clamp_setpoint(AttitudeSetpoint setpoint, const SetpointLimits& limits) {
  setpoint.roll = std::clamp(setpoint.roll, -limits.max_tilt, limits.max_tilt);
  setpoint.pitch = std::clamp(setpoint.pitch, -limits.max_tilt, limits.max_tilt);
  setpoint.thrust = std::clamp(setpoint.thrust, 0.0, limits.max_thrust);
  return setpoint;
}

AttitudeSetpoint inverse_solution(const plant::Vec3& accel, double yaw, double mass, double gravity,
                                  const SetpointLimits& limits) {
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  AttitudeSetpoint sp;
  sp.pitch = (accel.x() * c + accel.y() * s) / gravity;
  sp.roll = (accel.x() * s - accel.y() * c) / gravity;
  sp.yaw = yaw;
  sp.thrust = mass * (gravity + accel.z());
  return clamp_setpoint(sp, limits);
}

AttitudeLoopStep attitude_loop(const AttitudeSetpoint& setpoint, const plant::QuadState& state,
                               const AttitudeGains& gains, const AttitudeLoopState& loop, double dt,
                               double integral_limit) {
  if (!(dt > 0.0)) throw NonPositiveDt();
  const PidStep roll = pid_step(gains.roll, loop.roll, setpoint.roll - state.roll(), dt, integral_limit);
  const PidStep pitch = pid_step(gains.pitch, loop.pitch, setpoint.pitch - state.pitch(), dt, integral_limit);
  const PidStep yaw =
      pid_step(gains.yaw, loop.yaw, plant::wrap_angle(setpoint.yaw - state.yaw()), dt, integral_limit);
  AttitudeLoopStep out;
  out.torque = plant::Vec3(roll.output, pitch.output, yaw.output);
  out.state = {roll.state, pitch.state, yaw.state};
  return out;
}

}  // namespace bcuav::control
