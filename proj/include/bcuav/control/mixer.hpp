#pragma once

#include "bcuav/plant/quadrotor.hpp"

namespace bcuav::control {

struct MotorCommands {
  plant::RotorSpeeds speeds{};
  bool saturated = false;  // at least one squared speed was clamped
};

/// Inverts the X-quad allocation for squared rotor speeds, clamps each to
/// [0, max_rotor_speed^2] and returns the speeds.
MotorCommands mix(double thrust, const plant::Vec3& torque, const plant::QuadParams& params);

}  // namespace bcuav::control
