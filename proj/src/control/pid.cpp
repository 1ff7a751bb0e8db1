#include "bcuav/control/pid.hpp"

#include <algorithm>

namespace bcuav::control {

PidStep pid_step(const PidGains& gains, const PidState& state, double error, double dt, double integral_limit) {
  if (!(dt > 0.0)) throw NonPositiveDt();
  PidStep out;
  out.state.integral = std::clamp(state.integral + error * dt, -integral_limit, integral_limit);
  const double derivative = state.has_prev ? (error - state.prev_error) / dt : 0.0;
  out.state.prev_error = error;
  out.state.has_prev = true;
  out.output = gains.kp * error + gains.ki * out.state.integral + gains.kd * derivative;
  return out;
}

}  // namespace bcuav::control
