#include "bcuav/control/mixer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bcuav::control {

MotorCommands mix(double thrust, const plant::Vec3& torque, const plant::QuadParams& params) {
  // Rows of the allocation matrix are mutually orthogonal (+-1 patterns), so
  // the inverse is the transpose with each row scaled by 1 / (4 * coeff).
  const double d = params.arm_length / std::numbers::sqrt2;
  const double t = thrust / (4.0 * params.thrust_coeff);
  const double r = torque.x() / (4.0 * params.thrust_coeff * d);
  const double p = torque.y() / (4.0 * params.thrust_coeff * d);
  const double y = torque.z() / (4.0 * params.torque_coeff);
  const std::array<double, 4> squared = {t - r - p + y, t + r + p + y, t + r - p - y, t - r + p - y};

  const double max_sq = params.max_rotor_speed * params.max_rotor_speed;
  MotorCommands out;
  for (std::size_t i = 0; i < 4; ++i) {
    const double clamped = std::clamp(squared[i], 0.0, max_sq);
    if (clamped != squared[i]) out.saturated = true;
    out.speeds[i] = std::sqrt(clamped);
  }
  return out;
}

}  // namespace bcuav::control
