#pragma once

#include <limits>

#include "bcuav/control/pid.hpp"
#include "bcuav/fuzzy/inference.hpp"
#include "bcuav/fuzzy/rule_table.hpp"

namespace bcuav::control {

/// Quantization gains mapping physical (e, ec) onto the normalized universe,
/// and output gains mapping normalized increments back to gain units.
struct FuzzyScaling {
  double error_scale = 1.0;
  double rate_scale = 1.0;
  double kp_scale = 0.0;
  double ki_scale = 0.0;
  double kd_scale = 0.0;
};

/// Gain increments (dKp, dKi, dKd) from the three rule tables.
class FuzzyGainScheduler {
 public:
  FuzzyGainScheduler(fuzzy::MamdaniEngine engine, fuzzy::RuleSet rules)
      : engine_(std::move(engine)), rules_(std::move(rules)) {}

  static FuzzyGainScheduler standard() {
    return FuzzyGainScheduler(fuzzy::MamdaniEngine::normalized(), fuzzy::RuleSet::builtin());
  }

  /// Normalized increments, each in the output universe.
  PidGains increments(double error_norm, double rate_norm) const;

  const fuzzy::MamdaniEngine& engine() const { return engine_; }
  const fuzzy::RuleSet& rules() const { return rules_; }

 private:
  fuzzy::MamdaniEngine engine_;
  fuzzy::RuleSet rules_;
};

struct FuzzyPidStep {
  double output = 0.0;
  PidState state;
  PidGains effective;
};

/// Gains = max(0, base + scale * increment(e, ec)), then one pid_step.
/// ec is the backward difference of the error, zero on the first call.
FuzzyPidStep fuzzy_pid_step(const PidGains& base, const PidState& state, double error, double dt,
                            const FuzzyGainScheduler& scheduler, const FuzzyScaling& scaling,
                            double integral_limit = std::numeric_limits<double>::infinity());

}  // namespace bcuav::control
