#include "bcuav/bci/pilot.hpp"

#include <cmath>
#include <limits>

namespace bcuav::bci {

namespace {

using experiment::Vec2;

double along_speed(const Vec2& velocity, double heading) {
  return velocity.x() * std::cos(heading) + velocity.y() * std::sin(heading);
}

// Positive to the right of `heading`.
double lateral_speed(const Vec2& velocity, double heading) {
  return velocity.x() * std::sin(heading) - velocity.y() * std::cos(heading);
}

}  // namespace

BciCommand scripted_pilot(const plant::QuadState& state, const experiment::Trajectory& track,
                          const PilotConfig& config, const CommandLimits& limits, const plant::QuadParams& params) {
  const Vec2 position = state.position.head<2>();
  const Vec2 velocity = state.velocity.head<2>();
  const double yaw = state.yaw();

  const auto here = track.project(position);
  const double heading_error = plant::wrap_angle(yaw - here.heading);
  const double altitude_error = state.position.z() - track.altitude();
  if (std::abs(here.cross_track) < config.cross_track_deadband &&
      std::abs(heading_error) < config.heading_deadband && std::abs(altitude_error) < config.altitude_deadband) {
    return along_speed(velocity, here.heading) < config.cruise_speed - config.speed_deadband ? BciCommand::Forward
                                                                                              : BciCommand::Hover;
  }

  const double h = config.horizon;
  const Vec2 forward(std::cos(yaw), std::sin(yaw));
  const Vec2 right(std::sin(yaw), -std::cos(yaw));
  const double drag_rate = params.linear_drag / params.mass;

  BciCommand best = kVocabulary.front();
  double best_cost = std::numeric_limits<double>::infinity();
  for (const BciCommand candidate : kVocabulary) {
    const CommandSetpoint sp = command_to_setpoint(candidate, limits);
    const Vec2 accel = params.gravity * (-sp.pitch * forward + sp.roll * right) - drag_rate * velocity;
    const Vec2 p = position + h * velocity + 0.5 * h * h * accel;
    const Vec2 v = velocity + h * accel;
    const double predicted_yaw = yaw + sp.yaw_rate * h;
    const double z = state.position.z() + 0.5 * h * (state.velocity.z() + sp.climb_rate);

    const auto there = track.project(p);
    const double drift = there.cross_track + config.damping_time * lateral_speed(v, there.heading);
    const double cost = config.cross_track_weight * std::abs(drift) +
                        config.heading_weight * std::abs(plant::wrap_angle(predicted_yaw - there.heading)) +
                        config.altitude_weight * std::abs(z - track.altitude()) +
                        config.speed_weight * std::abs(along_speed(v, there.heading) - config.cruise_speed);
    if (cost < best_cost) {
      best_cost = cost;
      best = candidate;
    }
  }
  return best;
}

}  // namespace bcuav::bci
