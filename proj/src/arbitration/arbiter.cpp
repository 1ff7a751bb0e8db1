#include "bcuav/arbitration/arbiter.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace bcuav::arbitration {

FlightStatus evaluate_status(const plant::QuadState& state, const experiment::Trajectory& track,
                             const FlightStatus& prev, double dt, const StatusWeights& weights) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  const auto projection = track.project(state.position.head<2>());
  FlightStatus status;
  status.cross_track = projection.cross_track;
  status.altitude_error = state.position.z() - track.altitude();
  status.heading_error = plant::wrap_angle(state.yaw() - projection.heading);
  status.error_rate = prev.valid ? (status.cross_track - prev.cross_track) / dt : 0.0;
  status.risk = weights.cross_track * std::abs(status.cross_track) +
                weights.altitude * std::abs(status.altitude_error) +
                weights.heading * std::abs(status.heading_error) + weights.error_rate * std::abs(status.error_rate);
  status.valid = true;
  return status;
}

namespace {
constexpr std::array<std::string_view, 3> kModeNames = {"BRAIN", "AUTO", "BLEND"};
}  // namespace

std::string_view to_string(AuthorityMode mode) { return kModeNames[static_cast<std::size_t>(mode)]; }

std::optional<AuthorityMode> parse_authority_mode(std::string_view text) {
  for (std::size_t i = 0; i < kModeNames.size(); ++i) {
    if (kModeNames[i] == text) return static_cast<AuthorityMode>(i);
  }
  return std::nullopt;
}

void ArbiterConfig::validate() const {
  if (!(risk_low >= 0.0)) throw BadThresholds("arbitration.rho_lo must be >= 0");
  if (!(risk_high > risk_low)) throw BadThresholds("arbitration.rho_lo must be < arbitration.rho_hi");
  if (!(max_switch_rate > 0.0) || !std::isfinite(max_switch_rate)) {
    throw BadThresholds("arbitration.max_switch_rate must be positive");
  }
}

AuthorityState arbitrate(const FlightStatus& status, const AuthorityState& authority, double t,
                         const ArbiterConfig& config) {
  config.validate();
  const double rho = status.risk;
  const double ramp = std::clamp((config.risk_high - rho) / (config.risk_high - config.risk_low), 0.0, 1.0);

  AuthorityMode target;
  if (rho >= config.risk_high) {
    target = AuthorityMode::Auto;
  } else if (rho <= config.risk_low) {
    target = AuthorityMode::Brain;
  } else {
    target = authority.mode == AuthorityMode::Auto ? AuthorityMode::Auto : AuthorityMode::Blend;
  }

  AuthorityState next = authority;
  if (target != authority.mode) {
    if (t - authority.last_switch_time >= 1.0 / config.max_switch_rate) {
      next.mode = target;
      next.last_switch_time = t;
      ++next.switch_count;
    } else {
      next.alpha = ramp;
      return next;
    }
  }
  switch (next.mode) {
    case AuthorityMode::Brain: next.alpha = 1.0; break;
    case AuthorityMode::Auto: next.alpha = 0.0; break;
    case AuthorityMode::Blend: next.alpha = ramp; break;
  }
  return next;
}

bci::CommandSetpoint blend(const bci::CommandSetpoint& brain, const bci::CommandSetpoint& autopilot, double alpha) {
  const double beta = 1.0 - alpha;
  return {alpha * brain.pitch + beta * autopilot.pitch, alpha * brain.roll + beta * autopilot.roll,
          alpha * brain.yaw_rate + beta * autopilot.yaw_rate, alpha * brain.climb_rate + beta * autopilot.climb_rate};
}

}  // namespace bcuav::arbitration
