#pragma once

#include "bcuav/bci/command.hpp"
#include "bcuav/experiment/trajectory.hpp"
#include "bcuav/plant/quadrotor.hpp"

namespace bcuav::bci {

/// Tuning of the scripted stand-in for a human BCI operator.
struct PilotConfig {
  double horizon = 1.5;  // s, prediction horizon of the greedy choice
  double cruise_speed = 5.0;  // m/s, desired along-track speed

  double cross_track_weight = 1.0;
  double heading_weight = 4.0;
  double altitude_weight = 2.0;
  double speed_weight = 0.5;
  double damping_time = 1.0;  // s, lateral speed counts as cross-track this far ahead

  double cross_track_deadband = 0.5;  // m
  double heading_deadband = 0.1;      // rad
  double altitude_deadband = 0.3;     // m
  double speed_deadband = 0.5;        // m/s
};

/// Deterministic greedy operator.
///
/// Inside all deadbands it asks for FORWARD while below cruise speed and HOVER
/// otherwise. Outside them it predicts, for every command held over the
/// horizon, a point-mass motion (tilt acceleration, linear drag, yaw and climb
/// rates) and picks the command with the lowest weighted sum of
/// |cross-track + damping_time * lateral speed|, |heading|, |altitude| error
/// and |speed - cruise| at the horizon. Ties go to the earlier command in vocabulary order.
BciCommand scripted_pilot(const plant::QuadState& state, const experiment::Trajectory& track,
                          const PilotConfig& config, const CommandLimits& limits, const plant::QuadParams& params);

}  // namespace bcuav::bci
