#include "bcuav/control/fuzzy_pid.hpp"

#include <algorithm>

namespace bcuav::control {

PidGains FuzzyGainScheduler::increments(double error_norm, double rate_norm) const {
  return {engine_.infer(error_norm, rate_norm, rules_.kp), engine_.infer(error_norm, rate_norm, rules_.ki),
          engine_.infer(error_norm, rate_norm, rules_.kd)};
}

FuzzyPidStep fuzzy_pid_step(const PidGains& base, const PidState& state, double error, double dt,
                            const FuzzyGainScheduler& scheduler, const FuzzyScaling& scaling,
                            double integral_limit) {
  if (!(dt > 0.0)) throw NonPositiveDt();
  const double rate = state.has_prev ? (error - state.prev_error) / dt : 0.0;
  const PidGains delta = scheduler.increments(error * scaling.error_scale, rate * scaling.rate_scale);

  FuzzyPidStep out;
  out.effective.kp = std::max(0.0, base.kp + scaling.kp_scale * delta.kp);
  out.effective.ki = std::max(0.0, base.ki + scaling.ki_scale * delta.ki);
  out.effective.kd = std::max(0.0, base.kd + scaling.kd_scale * delta.kd);

  const PidStep pid = pid_step(out.effective, state, error, dt, integral_limit);
  out.output = pid.output;
  out.state = pid.state;
  return out;
}

}  // namespace bcuav::control
