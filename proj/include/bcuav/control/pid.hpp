#pragma once

#include <limits>
#include <stdexcept>

namespace bcuav::control {

class NonPositiveDt : public std::invalid_argument {
 public:
  NonPositiveDt() : std::invalid_argument("dt must be positive") {}
};

struct PidGains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
};

struct PidState {
  double integral = 0.0;  // error * s, kept within the anti-windup bound
  double prev_error = 0.0;
  bool has_prev = false;
};

struct PidStep {
  double output = 0.0;
  PidState state;
};

/// Positional PID with rectangle-rule integral clamped to +-integral_limit and
/// a backward-difference derivative on the error (zero on the first call).
PidStep pid_step(const PidGains& gains, const PidState& state, double error, double dt,
                 double integral_limit = std::numeric_limits<double>::infinity());

}  // namespace bcuav::control
