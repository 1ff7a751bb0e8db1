#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "bcuav/bci/command.hpp"
#include "bcuav/experiment/trajectory.hpp"
#include "bcuav/plant/quadrotor.hpp"

namespace bcuav::arbitration {

class BadThresholds : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Weights of the composite risk score.
struct StatusWeights {
  double cross_track = 1.0;
  double altitude = 1.0;
  double heading = 0.5;
  double error_rate = 0.2;
};

struct FlightStatus {
  double cross_track = 0.0;     // m, signed
  double altitude_error = 0.0;  // m, z - track altitude
  double heading_error = 0.0;   // rad, yaw - track tangent, wrapped
  double error_rate = 0.0;      // m/s, rate of change of the cross-track error
  double risk = 0.0;            // dimensionless
  bool valid = false;           // false until the first evaluation
};

/// Error components relative to the track and the composite risk
///   risk = w1 |cross_track| + w2 |altitude_error| + w3 |heading_error| + w4 |error_rate|.
/// The error rate is a backward difference against `prev` (zero when prev is
/// not yet valid). Throws std::invalid_argument for dt <= 0.
FlightStatus evaluate_status(const plant::QuadState& state, const experiment::Trajectory& track,
                             const FlightStatus& prev, double dt, const StatusWeights& weights);

enum class AuthorityMode { Brain, Auto, Blend };

std::string_view to_string(AuthorityMode mode);
std::optional<AuthorityMode> parse_authority_mode(std::string_view text);

struct AuthorityState {
  double alpha = 1.0;  // 1 = full brain authority, 0 = full autopilot
  AuthorityMode mode = AuthorityMode::Brain;
  double last_switch_time = -std::numeric_limits<double>::infinity();
  int switch_count = 0;
};

struct ArbiterConfig {
  double risk_low = 1.0;
  double risk_high = 3.0;
  double max_switch_rate = 0.5;  // 1/s

  /// Throws BadThresholds unless risk_high > risk_low >= 0 and max_switch_rate > 0.
  void validate() const;
};

/// Hysteresis switching between brain and autopilot authority.
///
/// Target mode: AUTO when risk >= risk_high, BRAIN when risk <= risk_low; in
/// between, AUTO is held if already AUTO, otherwise BLEND. Authority follows
/// the mode (BRAIN 1, AUTO 0, BLEND the linear ramp
/// (risk_high - risk) / (risk_high - risk_low)). A mode change sooner than
/// 1 / max_switch_rate after the previous one is deferred: the label stays,
/// while alpha follows the clamped ramp.
AuthorityState arbitrate(const FlightStatus& status, const AuthorityState& authority, double t,
                         const ArbiterConfig& config);

/// Per-field convex combination alpha * brain + (1 - alpha) * autopilot.
bci::CommandSetpoint blend(const bci::CommandSetpoint& brain, const bci::CommandSetpoint& autopilot, double alpha);

}  // namespace bcuav::arbitration
