#include "bcuav/plant/quadrotor.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace bcuav::plant {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string("plant.") + name + " must be positive");
  }
}

QuadState advance(const QuadState& s, const StateDerivative& d, double h) {
  QuadState out;
  out.position = s.position + h * d.position;
  out.velocity = s.velocity + h * d.velocity;
  out.attitude = s.attitude + h * d.attitude;
  out.body_rates = s.body_rates + h * d.body_rates;
  return out;
}

}  // namespace

void QuadParams::validate() const {
  require_positive(mass, "mass");
  require_positive(inertia.x(), "inertia[0]");
  require_positive(inertia.y(), "inertia[1]");
  require_positive(inertia.z(), "inertia[2]");
  require_positive(arm_length, "arm_length");
  require_positive(thrust_coeff, "thrust_coeff");
  require_positive(torque_coeff, "torque_coeff");
  require_positive(max_rotor_speed, "max_rotor_speed");
  require_positive(gravity, "gravity");
  if (!(linear_drag >= 0.0) || !std::isfinite(linear_drag)) {
    throw std::invalid_argument("plant.linear_drag must be >= 0");
  }
}

double wrap_angle(double angle) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  if (angle > -std::numbers::pi && angle <= std::numbers::pi) return angle;
  double wrapped = std::fmod(angle + std::numbers::pi, kTwoPi);
  if (wrapped <= 0.0) wrapped += kTwoPi;
  return wrapped - std::numbers::pi;
}

Eigen::Matrix3d rotation(const Vec3& attitude) {
  return (Eigen::AngleAxisd(attitude.z(), Vec3::UnitZ()) * Eigen::AngleAxisd(attitude.y(), Vec3::UnitY()) *
          Eigen::AngleAxisd(attitude.x(), Vec3::UnitX()))
      .toRotationMatrix();
}

Wrench rotor_wrench(const RotorSpeeds& speeds, const QuadParams& params) {
  std::array<double, 4> thrust{};
  for (std::size_t i = 0; i < 4; ++i) thrust[i] = params.thrust_coeff * speeds[i] * speeds[i];
  const double d = params.arm_length / std::numbers::sqrt2;
  // Rotor positions (x, y): FR (+d,-d), RL (-d,+d), FL (+d,+d), RR (-d,-d).
  constexpr std::array<double, 4> kX = {1.0, -1.0, 1.0, -1.0};
  constexpr std::array<double, 4> kY = {-1.0, 1.0, 1.0, -1.0};
  constexpr std::array<double, 4> kSpin = {1.0, 1.0, -1.0, -1.0};
  Wrench w;
  for (std::size_t i = 0; i < 4; ++i) {
    w.thrust += thrust[i];
    w.torque.x() += d * kY[i] * thrust[i];
    w.torque.y() -= d * kX[i] * thrust[i];
    w.torque.z() += kSpin[i] * params.torque_coeff * speeds[i] * speeds[i];
  }
  return w;
}

double hover_rotor_speed(const QuadParams& params) {
  return std::sqrt(params.mass * params.gravity / (4.0 * params.thrust_coeff));
}

StateDerivative derivative(const QuadState& state, const RotorSpeeds& speeds, const QuadParams& params) {
  const double roll = state.attitude.x();
  const double pitch = state.attitude.y();
  if (std::abs(std::abs(pitch) - std::numbers::pi / 2.0) < kGimbalMargin) throw GimbalProximity();

  const Wrench w = rotor_wrench(speeds, params);
  StateDerivative d;
  d.position = state.velocity;

  const Vec3 thrust_inertial = rotation(state.attitude) * Vec3(0.0, 0.0, w.thrust);
  d.velocity = thrust_inertial / params.mass - Vec3(0.0, 0.0, params.gravity) -
               (params.linear_drag / params.mass) * state.velocity;

  const Vec3& omega = state.body_rates;
  const Vec3 angular_momentum = params.inertia.cwiseProduct(omega);
  d.body_rates = (w.torque - omega.cross(angular_momentum)).cwiseQuotient(params.inertia);

  const double sr = std::sin(roll);
  const double cr = std::cos(roll);
  const double tp = std::tan(pitch);
  const double cp = std::cos(pitch);
  d.attitude.x() = omega.x() + (sr * omega.y() + cr * omega.z()) * tp;
  d.attitude.y() = cr * omega.y() - sr * omega.z();
  d.attitude.z() = (sr * omega.y() + cr * omega.z()) / cp;
  return d;
}

QuadState step(const QuadState& state, const RotorSpeeds& speeds, const QuadParams& params, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  const StateDerivative k1 = derivative(state, speeds, params);
  const StateDerivative k2 = derivative(advance(state, k1, 0.5 * dt), speeds, params);
  const StateDerivative k3 = derivative(advance(state, k2, 0.5 * dt), speeds, params);
  const StateDerivative k4 = derivative(advance(state, k3, dt), speeds, params);

  QuadState next;
  const double h6 = dt / 6.0;
  next.position = state.position + h6 * (k1.position + 2.0 * k2.position + 2.0 * k3.position + k4.position);
  next.velocity = state.velocity + h6 * (k1.velocity + 2.0 * k2.velocity + 2.0 * k3.velocity + k4.velocity);
  next.attitude = state.attitude + h6 * (k1.attitude + 2.0 * k2.attitude + 2.0 * k3.attitude + k4.attitude);
  next.body_rates =
      state.body_rates + h6 * (k1.body_rates + 2.0 * k2.body_rates + 2.0 * k3.body_rates + k4.body_rates);
  for (int i = 0; i < 3; ++i) next.attitude[i] = wrap_angle(next.attitude[i]);
  return next;
}

double mechanical_energy(const QuadState& state, const QuadParams& params) {
  const double translational = 0.5 * params.mass * state.velocity.squaredNorm();
  const double rotational = 0.5 * state.body_rates.dot(params.inertia.cwiseProduct(state.body_rates));
  const double potential = params.mass * params.gravity * state.position.z();
  return translational + rotational + potential;
}

}  // namespace bcuav::plant
