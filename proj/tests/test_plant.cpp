#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "bcuav/control/mixer.hpp"
#include "bcuav/plant/quadrotor.hpp"

using namespace bcuav::plant;

namespace {

RotorSpeeds hover_speeds(const QuadParams& p) {
  const double w = hover_rotor_speed(p);
  return {w, w, w, w};
}

Eigen::Matrix<double, 12, 1> flat(const QuadState& s) {
  Eigen::Matrix<double, 12, 1> v;
  v << s.position, s.velocity, s.attitude, s.body_rates;
  return v;
}

// Piecewise-constant rotor inputs around hover, switching every 0.1 s.
std::vector<RotorSpeeds> seeded_inputs(const QuadParams& p, int segments, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-15.0, 15.0);
  const double w = hover_rotor_speed(p);
  std::vector<RotorSpeeds> out(static_cast<std::size_t>(segments));
  for (auto& r : out) r = {w + jitter(rng), w + jitter(rng), w + jitter(rng), w + jitter(rng)};
  return out;
}

QuadState fly(const QuadParams& p, const std::vector<RotorSpeeds>& inputs, double dt) {
  QuadState s;
  s.position = {1.0, -2.0, 5.0};
  s.velocity = {0.5, 0.2, 0.0};
  const int per_segment = static_cast<int>(std::lround(0.1 / dt));
  for (const auto& r : inputs) {
    for (int k = 0; k < per_segment; ++k) s = step(s, r, p, dt);
  }
  return s;
}

}  // namespace

TEST_CASE("wrap_angle maps into (-pi, pi]") {
  CHECK(wrap_angle(0.3) == 0.3);
  CHECK(wrap_angle(std::numbers::pi) == std::numbers::pi);
  CHECK(wrap_angle(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(wrap_angle(3 * std::numbers::pi / 2) == doctest::Approx(-std::numbers::pi / 2));
  CHECK(wrap_angle(-7.0) == doctest::Approx(-7.0 + 2 * std::numbers::pi));
}

TEST_CASE("hover is an exact equilibrium") {
  const QuadParams p;
  QuadState s;
  s.position = {3.0, -4.0, 5.0};
  s.attitude.z() = 0.7;
  const auto d = derivative(s, hover_speeds(p), p);
  CHECK(d.velocity.norm() < 1e-12);
  CHECK(d.body_rates.norm() == 0.0);

  const QuadState start = s;
  for (int k = 0; k < 1000; ++k) s = step(s, hover_speeds(p), p, 0.01);
  CHECK((s.position - start.position).norm() < 1e-9);
  CHECK(s.velocity.norm() < 1e-9);
  CHECK((s.attitude - start.attitude).norm() < 1e-9);
}

TEST_CASE("free fall") {
  QuadParams p;
  p.linear_drag = 0.0;
  QuadState s;
  s.position.z() = 100.0;
  const auto d = derivative(s, {0, 0, 0, 0}, p);
  CHECK(d.velocity.z() == -p.gravity);

  for (int k = 0; k < 100; ++k) s = step(s, {0, 0, 0, 0}, p, 0.01);
  CHECK(std::abs((s.position.z() - 100.0) - (-4.905)) < 1e-6);
  CHECK(s.velocity.z() == doctest::Approx(-9.81).epsilon(1e-12));
}

TEST_CASE("constant roll torque from rest gives rate tau t / Ixx") {
  const QuadParams p;
  const auto speeds = bcuav::control::mix(p.mass * p.gravity, {0.01, 0.0, 0.0}, p).speeds;
  const double tau = rotor_wrench(speeds, p).torque.x();
  CHECK(tau == doctest::Approx(0.01).epsilon(1e-12));

  QuadState s;
  for (int k = 0; k < 50; ++k) s = step(s, speeds, p, 0.01);
  CHECK(s.body_rates.x() == doctest::Approx(tau * 0.5 / p.inertia.x()).epsilon(1e-12));
  CHECK(std::abs(s.body_rates.y()) < 1e-15);
}

TEST_CASE("positive pitch tilts thrust toward +x") {
  const QuadParams p;
  QuadState s;
  s.attitude.y() = 0.1;
  const auto d = derivative(s, hover_speeds(p), p);
  CHECK(d.velocity.x() > 0.0);
  CHECK(d.velocity.x() == doctest::Approx(p.gravity * std::sin(0.1)));
}

TEST_CASE("RK4 error drops by ~16 per dt halving") {
  const QuadParams p;
  const auto inputs = seeded_inputs(p, 20, 77);
  const auto a = flat(fly(p, inputs, 0.02));
  const auto b = flat(fly(p, inputs, 0.01));
  const auto c = flat(fly(p, inputs, 0.005));
  const double ratio = (a - b).norm() / (b - c).norm();
  INFO("Richardson ratio " << ratio);
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("mechanical energy is conserved with drag and motors off") {
  QuadParams p;
  p.linear_drag = 0.0;
  QuadState s;
  s.position = {0.0, 0.0, 200.0};
  s.velocity = {1.0, 2.0, 3.0};
  s.body_rates = {0.3, -0.05, 0.5};
  const double e0 = mechanical_energy(s, p);
  const double seconds = 5.0;
  for (int k = 0; k < 500; ++k) s = step(s, {0, 0, 0, 0}, p, 0.01);
  const double drift = std::abs(mechanical_energy(s, p) - e0) / std::abs(e0) / seconds;
  INFO("relative drift per second " << drift);
  CHECK(drift < 1e-6);
}

TEST_CASE("identical inputs give bit-identical trajectories") {
  const QuadParams p;
  const auto inputs = seeded_inputs(p, 30, 123);
  const auto a = flat(fly(p, inputs, 0.01));
  const auto b = flat(fly(p, inputs, 0.01));
  for (int i = 0; i < 12; ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("errors") {
  const QuadParams p;
  QuadState s;
  s.attitude.y() = std::numbers::pi / 2 - 5e-4;
  CHECK_THROWS_AS(derivative(s, hover_speeds(p), p), GimbalProximity);
  CHECK_THROWS_AS(step(s, hover_speeds(p), p, 0.01), GimbalProximity);
  s.attitude.y() = -std::numbers::pi / 2 + 5e-4;
  CHECK_THROWS_AS(derivative(s, hover_speeds(p), p), GimbalProximity);

  CHECK_THROWS_AS(step(QuadState{}, hover_speeds(p), p, 0.0), std::invalid_argument);

  QuadParams bad = p;
  bad.mass = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.linear_drag = -0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("angles stay wrapped") {
  const QuadParams p;
  QuadState s;
  s.attitude.z() = std::numbers::pi - 0.01;
  s.body_rates.z() = 2.0;
  for (int k = 0; k < 100; ++k) {
    s = step(s, hover_speeds(p), p, 0.01);
    REQUIRE(s.yaw() > -std::numbers::pi);
    REQUIRE(s.yaw() <= std::numbers::pi);
  }
}
