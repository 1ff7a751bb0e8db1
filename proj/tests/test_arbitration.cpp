#include <doctest.h>

#include <cmath>
#include <random>

#include "bcuav/arbitration/arbiter.hpp"

using namespace bcuav;
using namespace bcuav::arbitration;

namespace {

FlightStatus risk(double rho) {
  FlightStatus s;
  s.risk = rho;
  s.valid = true;
  return s;
}

const ArbiterConfig kDefault{1.0, 3.0, 0.5};

}  // namespace

TEST_CASE("evaluate_status examples") {
  const auto track = experiment::build_runway(200, 157, 5);
  plant::QuadState s;
  s.position = {40.0, 0.0, 5.0};
  const auto on_track = evaluate_status(s, track, {}, 0.01, {});
  CHECK(on_track.risk == 0.0);
  CHECK(on_track.valid);

  s.position = {40.0, -2.0, 5.0};  // 2 m right of the first straight
  const auto off = evaluate_status(s, track, {}, 0.01, {1.0, 0.0, 0.0, 0.0});
  CHECK(off.cross_track == doctest::Approx(2.0));
  CHECK(off.risk == doctest::Approx(2.0));
  CHECK(off.error_rate == 0.0);  // no valid previous status

  s.position = {40.0, -2.5, 6.0};
  s.attitude.z() = 0.2;
  const auto later = evaluate_status(s, track, off, 0.01, {1.0, 1.0, 0.5, 0.2});
  CHECK(later.error_rate == doctest::Approx(50.0));
  CHECK(later.risk == doctest::Approx(2.5 + 1.0 + 0.1 + 10.0));

  CHECK_THROWS_AS(evaluate_status(s, track, {}, 0.0, {}), std::invalid_argument);
}

TEST_CASE("simple arbitration examples") {
  const auto brain = arbitrate(risk(0.0), {}, 0.0, kDefault);
  CHECK(brain.mode == AuthorityMode::Brain);
  CHECK(brain.alpha == 1.0);

  AuthorityState a;
  for (int k = 0; k < 100; ++k) a = arbitrate(risk(5.0), a, 0.1 * k, kDefault);
  CHECK(a.mode == AuthorityMode::Auto);
  CHECK(a.alpha == 0.0);
}

TEST_CASE("hand-traced hysteresis sequence") {
  // rho:    0      2      3.5    2      0.5
  // mode:   BRAIN  BLEND  AUTO   AUTO   BRAIN
  // alpha:  1      0.5    0      0      1
  const double rho[] = {0.0, 2.0, 3.5, 2.0, 0.5};
  const AuthorityMode mode[] = {AuthorityMode::Brain, AuthorityMode::Blend, AuthorityMode::Auto, AuthorityMode::Auto,
                                AuthorityMode::Brain};
  const double alpha[] = {1.0, 0.5, 0.0, 0.0, 1.0};
  const int switches[] = {0, 1, 2, 2, 3};
  AuthorityState a;
  for (int k = 0; k < 5; ++k) {
    a = arbitrate(risk(rho[k]), a, 10.0 * k, kDefault);
    CAPTURE(k);
    CHECK(a.mode == mode[k]);
    CHECK(a.alpha == alpha[k]);
    CHECK(a.switch_count == switches[k]);
  }
}

TEST_CASE("mode changes sooner than 1/r_max are deferred while alpha follows the ramp") {
  AuthorityState a = arbitrate(risk(4.0), {}, 0.0, kDefault);
  REQUIRE(a.mode == AuthorityMode::Auto);
  a = arbitrate(risk(0.5), a, 1.0, kDefault);
  CHECK(a.mode == AuthorityMode::Auto);
  CHECK(a.alpha == 1.0);
  a = arbitrate(risk(2.5), a, 1.5, kDefault);
  CHECK(a.mode == AuthorityMode::Auto);
  CHECK(a.alpha == 0.0);  // AUTO holds inside the band, no change requested
  a = arbitrate(risk(0.0), a, 2.0, kDefault);
  CHECK(a.mode == AuthorityMode::Brain);
  CHECK(a.last_switch_time == 2.0);
  CHECK(a.switch_count == 2);
}

TEST_CASE("bad thresholds") {
  CHECK_THROWS_AS(arbitrate(risk(0), {}, 0, {3.0, 3.0, 0.5}), BadThresholds);
  CHECK_THROWS_AS(arbitrate(risk(0), {}, 0, {4.0, 3.0, 0.5}), BadThresholds);
  CHECK_THROWS_AS(arbitrate(risk(0), {}, 0, {-1.0, 3.0, 0.5}), BadThresholds);
  CHECK_THROWS_AS(arbitrate(risk(0), {}, 0, {1.0, 3.0, 0.0}), BadThresholds);
  try {
    ArbiterConfig{3.0, 1.0, 0.5}.validate();
  } catch (const BadThresholds& e) {
    CHECK(std::string(e.what()).find("rho_lo") != std::string::npos);
  }
}

TEST_CASE("alpha is non-increasing in rho for a fixed prior state") {
  for (const AuthorityMode prior : {AuthorityMode::Brain, AuthorityMode::Auto, AuthorityMode::Blend}) {
    for (const double last_switch : {-1e9, 9.5}) {
      AuthorityState start;
      start.mode = prior;
      start.alpha = 0.3;
      start.last_switch_time = last_switch;
      double previous = 2.0;
      AuthorityMode previous_mode = prior;
      for (int k = 0; k <= 500; ++k) {
        const double rho = 0.01 * k;
        const auto next = arbitrate(risk(rho), start, 10.0, kDefault);
        REQUIRE(std::isfinite(next.alpha));
        REQUIRE(next.alpha >= 0.0);
        REQUIRE(next.alpha <= 1.0);
        if (next.mode == previous_mode) REQUIRE(next.alpha <= previous);
        previous = next.alpha;
        previous_mode = next.mode;
      }
    }
  }
}

TEST_CASE("switch spacing holds on a random risk stream") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> jump(-1.0, 1.0);
  double rho = 2.0;
  AuthorityState a;
  double last = -1e9;
  int observed = 0;
  for (int k = 0; k < 100000; ++k) {
    rho = std::clamp(rho + jump(rng), 0.0, 5.0);
    const double t = 0.01 * k;
    const auto next = arbitrate(risk(rho), a, t, kDefault);
    if (next.mode != a.mode) {
      REQUIRE(t - last >= 1.0 / kDefault.max_switch_rate - 1e-12);
      last = t;
      ++observed;
    }
    a = next;
  }
  CHECK(observed > 100);
  CHECK(a.switch_count == observed);
}

TEST_CASE("blend") {
  const bci::CommandSetpoint brain{-0.1, 0.05, 0.15, 0.5};
  const bci::CommandSetpoint autopilot{0.1, -0.02, 0.0, -0.3};
  CHECK(blend(brain, autopilot, 1.0) == brain);
  CHECK(blend(brain, autopilot, 0.0) == autopilot);
  CHECK(blend(brain, autopilot, 0.5).pitch == 0.0);
  CHECK(blend(brain, autopilot, 0.25).climb_rate == doctest::Approx(0.25 * 0.5 + 0.75 * -0.3));
}

TEST_CASE("mode names") {
  for (const auto m : {AuthorityMode::Brain, AuthorityMode::Auto, AuthorityMode::Blend}) {
    CHECK(parse_authority_mode(to_string(m)) == m);
  }
  CHECK_FALSE(parse_authority_mode("brain").has_value());
}
