#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bcuav/control/cascade.hpp"
#include "bcuav/control/fuzzy_pid.hpp"
#include "bcuav/control/mixer.hpp"
#include "bcuav/experiment/config.hpp"

using namespace bcuav;
using namespace bcuav::control;

TEST_CASE("pid examples") {
  CHECK(pid_step({1.0, 1.0, 1.0}, {}, 0.0, 0.01).output == 0.0);
  CHECK(pid_step({2.0, 0.0, 0.0}, {}, 1.0, 0.01).output == 2.0);

  PidState s;
  double out = 0.0;
  for (int k = 0; k < 20; ++k) {
    const auto r = pid_step({1.0, 1.0, 0.0}, s, 1.0, 0.1);
    s = r.state;
    out = r.output;
  }
  CHECK(out == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("pid derivative is a backward difference, zero on the first call") {
  const PidGains d{0.0, 0.0, 1.0};
  const auto first = pid_step(d, {}, 5.0, 0.1);
  CHECK(first.output == 0.0);
  const auto second = pid_step(d, first.state, 4.0, 0.1);
  CHECK(second.output == doctest::Approx(-10.0));
}

TEST_CASE("non-positive dt is rejected") {
  CHECK_THROWS_AS(pid_step({}, {}, 1.0, 0.0), NonPositiveDt);
  CHECK_THROWS_AS(pid_step({}, {}, 1.0, -0.1), NonPositiveDt);
  CHECK_THROWS_AS(pid_step({}, {}, 1.0, NAN), NonPositiveDt);
  CHECK_THROWS_AS(fuzzy_pid_step({}, {}, 1.0, 0.0, FuzzyGainScheduler::standard(), {}), NonPositiveDt);
  CHECK_THROWS_AS(attitude_loop({}, {}, {}, {}, 0.0), NonPositiveDt);
}

TEST_CASE("anti-windup keeps the integral inside the clamp") {
  const PidGains g{1.0, 2.0, 0.0};
  const double limit = 0.5;
  PidState s;
  for (int k = 0; k < 1000; ++k) {  // 10 s saturated
    s = pid_step(g, s, 10.0, 0.01, limit).state;
    REQUIRE(std::abs(s.integral) <= limit);
  }
  CHECK(s.integral == limit);
  for (int k = 0; k < 1000; ++k) {
    const double before = s.integral;
    s = pid_step(g, s, -10.0, 0.01, limit).state;
    REQUIRE(std::abs(s.integral) <= limit);
    if (before > -limit) REQUIRE(s.integral < before);  // unwinds from the first step
  }
  CHECK(s.integral == -limit);
}

TEST_CASE("fuzzy pid examples") {
  const auto scheduler = FuzzyGainScheduler::standard();
  const FuzzyScaling scaling{1.0, 1.0, 0.5, 0.1, 0.2};
  const PidGains base{2.0, 0.5, 1.0};

  // e = 0, ec = 0: Kp consequent NS, centroid at its center -1.
  const auto zero = fuzzy_pid_step(base, {}, 0.0, 0.01, scheduler, scaling);
  CHECK(zero.effective.kp == doctest::Approx(2.0 - 0.5).epsilon(1e-12));

  // Saturated positive error with a saturated negative rate: row PB, column NB.
  const auto first = fuzzy_pid_step(base, {}, 100.0, 0.1, scheduler, scaling);
  const auto second = fuzzy_pid_step(base, first.state, 10.0, 0.1, scheduler, scaling);
  CHECK(second.effective.kp == doctest::Approx(2.0 + 0.5 * 2.0).epsilon(1e-12));  // PM center
  CHECK(second.effective.ki == doctest::Approx(0.5 + 0.1 * -3.0).epsilon(1e-12));  // NB center
  CHECK(second.effective.kd == doctest::Approx(1.0 + 0.2 * 3.0).epsilon(1e-12));   // PB center
}

TEST_CASE("zero increment scales reduce fuzzy pid to plain pid") {
  const auto scheduler = FuzzyGainScheduler::standard();
  const FuzzyScaling off{0.7, 0.3, 0.0, 0.0, 0.0};
  std::mt19937_64 rng(5);
  std::normal_distribution<double> noise(0.0, 2.0);
  std::uniform_real_distribution<double> gain(0.0, 3.0);
  for (int stream = 0; stream < 100; ++stream) {
    const PidGains base{gain(rng), gain(rng), gain(rng)};
    PidState a, b;
    for (int k = 0; k < 50; ++k) {
      const double e = noise(rng);
      const auto fz = fuzzy_pid_step(base, a, e, 0.01, scheduler, off, 1.5);
      const auto pl = pid_step(base, b, e, 0.01, 1.5);
      REQUIRE(fz.output == pl.output);
      REQUIRE(fz.state.integral == pl.state.integral);
      a = fz.state;
      b = pl.state;
    }
  }
}

TEST_CASE("effective gains are never negative or NaN") {
  const auto scheduler = FuzzyGainScheduler::standard();
  const FuzzyScaling aggressive{3.0, 0.5, 10.0, 10.0, 10.0};
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> mag(-8.0, 8.0);
  PidState s;
  for (int k = 0; k < 5000; ++k) {
    const double e = std::copysign(std::pow(10.0, std::abs(mag(rng))), mag(rng));
    const auto r = fuzzy_pid_step({0.1, 0.0, 0.05}, s, e, 0.01, scheduler, aggressive, 10.0);
    REQUIRE(r.effective.kp >= 0.0);
    REQUIRE(r.effective.ki >= 0.0);
    REQUIRE(r.effective.kd >= 0.0);
    REQUIRE(std::isfinite(r.effective.kp + r.effective.ki + r.effective.kd));
    s = r.state;
  }
}

TEST_CASE("inverse solution examples") {
  const SetpointLimits limits{0.35, 30.0};
  const auto hover = inverse_solution({0, 0, 0}, 0.0, 1.2, 9.81, limits);
  CHECK(hover.roll == 0.0);
  CHECK(hover.pitch == 0.0);
  CHECK(hover.thrust == doctest::Approx(1.2 * 9.81));

  const auto forward = inverse_solution({0.981, 0, 0}, 0.0, 1.2, 9.81, limits);
  CHECK(forward.pitch == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(std::abs(forward.roll) < 1e-15);

  const auto rotated = inverse_solution({0.981, 0, 0}, std::numbers::pi / 2, 1.2, 9.81, limits);
  CHECK(rotated.roll == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(std::abs(rotated.pitch) < 1e-15);

  const auto clamped = inverse_solution({50, -50, 100}, 0.3, 1.2, 9.81, limits);
  CHECK(std::abs(clamped.pitch) == limits.max_tilt);
  CHECK(std::abs(clamped.roll) == limits.max_tilt);
  CHECK(clamped.thrust == limits.max_thrust);
  CHECK(inverse_solution({0, 0, -50}, 0.0, 1.2, 9.81, limits).thrust == 0.0);
}

TEST_CASE("attitude loop examples") {
  AttitudeGains gains;
  gains.roll = {4.0, 0.0, 0.0};
  const auto idle = attitude_loop({0.1, -0.2, 0.3, 10.0}, [] {
    plant::QuadState s;
    s.attitude = {0.1, -0.2, 0.3};
    return s;
  }(), gains, {}, 0.01);
  CHECK(idle.torque.norm() == 0.0);

  const auto step = attitude_loop({0.1, 0.0, 0.0, 10.0}, {}, gains, {}, 0.01);
  CHECK(step.torque.x() == doctest::Approx(0.4));
  CHECK(step.torque.y() == 0.0);

  // Yaw error takes the short way round the circle.
  gains.yaw = {1.0, 0.0, 0.0};
  plant::QuadState near_pi;
  near_pi.attitude.z() = 3.1;
  const auto wrap = attitude_loop({0, 0, -3.1, 10.0}, near_pi, gains, {}, 0.01);
  CHECK(wrap.torque.z() == doctest::Approx(2 * std::numbers::pi - 6.2));
}

TEST_CASE("roll step on the full plant settles") {
  const experiment::ExperimentConfig cfg;
  const auto& params = cfg.plant;
  plant::QuadState s;
  AttitudeLoopState loop;
  const AttitudeSetpoint target{0.1, 0.0, 0.0, params.mass * params.gravity};
  const double dt = 0.01;
  double worst_after_settle = 0.0;
  for (int k = 0; k < 300; ++k) {
    const auto inner = attitude_loop(target, s, cfg.controller.attitude, loop, dt);
    loop = inner.state;
    s = plant::step(s, mix(target.thrust, inner.torque, params).speeds, params, dt);
    if (k * dt >= 1.5) worst_after_settle = std::max(worst_after_settle, std::abs(s.roll() - 0.1));
  }
  CHECK(worst_after_settle < 0.002);
}

TEST_CASE("mixer examples") {
  const plant::QuadParams p;
  const double thrust = p.mass * p.gravity;

  const auto level = mix(thrust, plant::Vec3::Zero(), p);
  CHECK_FALSE(level.saturated);
  for (const double w : level.speeds) CHECK(w == doctest::Approx(level.speeds[0]));
  CHECK(plant::rotor_wrench(level.speeds, p).thrust == doctest::Approx(thrust).epsilon(1e-12));

  const auto yaw = mix(thrust, {0.0, 0.0, 0.02}, p);
  CHECK(yaw.speeds[0] == doctest::Approx(yaw.speeds[1]));
  CHECK(yaw.speeds[2] == doctest::Approx(yaw.speeds[3]));
  CHECK(yaw.speeds[0] > yaw.speeds[2]);
  const auto w = plant::rotor_wrench(yaw.speeds, p);
  CHECK(w.thrust == doctest::Approx(thrust).epsilon(1e-12));
  CHECK(w.torque.z() == doctest::Approx(0.02).epsilon(1e-12));
}

TEST_CASE("mix then forward model is the identity when unsaturated") {
  const plant::QuadParams p;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> thrust(6.0, 18.0);
  std::uniform_real_distribution<double> torque(-0.1, 0.1);
  std::uniform_real_distribution<double> yaw(-0.005, 0.005);
  int checked = 0;
  for (int k = 0; k < 2000; ++k) {
    const double t = thrust(rng);
    const plant::Vec3 tau(torque(rng), torque(rng), yaw(rng));
    const auto m = mix(t, tau, p);
    if (m.saturated) continue;
    ++checked;
    const auto back = plant::rotor_wrench(m.speeds, p);
    REQUIRE(std::abs(back.thrust - t) < 1e-9);
    REQUIRE((back.torque - tau).cwiseAbs().maxCoeff() < 1e-9);
  }
  CHECK(checked > 1500);
}

TEST_CASE("mixer clamps to the rotor limits and flags saturation") {
  const plant::QuadParams p;
  const auto high = mix(1000.0, plant::Vec3::Zero(), p);
  CHECK(high.saturated);
  for (const double w : high.speeds) CHECK(w == p.max_rotor_speed);
  const auto low = mix(0.0, {0.5, 0.0, 0.0}, p);
  CHECK(low.saturated);
  for (const double w : low.speeds) {
    CHECK(w >= 0.0);
    CHECK(w <= p.max_rotor_speed);
  }
}
