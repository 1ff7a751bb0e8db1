#include <doctest.h>

#include <cmath>
#include <map>

#include "bcuav/bci/channel.hpp"
#include "bcuav/bci/pilot.hpp"
#include "bcuav/experiment/simulation.hpp"

using namespace bcuav;
using namespace bcuav::bci;

namespace {

ChannelModel model(double p, double t_rec, double latency, std::uint64_t seed = 1) {
  ChannelModel m;
  m.accuracy = p;
  m.recognition_interval = t_rec;
  m.latency = latency;
  m.seed = seed;
  return m;
}

std::vector<std::optional<Delivery>> drive(CommandChannel& ch, int n, double spacing) {
  std::vector<std::optional<Delivery>> out;
  for (int k = 0; k < n; ++k) out.push_back(ch.emit(kVocabulary[static_cast<std::size_t>(k) % kCommandCount], k * spacing));
  return out;
}

}  // namespace

TEST_CASE("command names round trip") {
  for (const auto c : kVocabulary) CHECK(parse_command(to_string(c)) == c);
  CHECK(to_string(BciCommand::YawLeft) == "YAW_LEFT");
  CHECK_FALSE(parse_command("forward").has_value());
  CHECK_FALSE(parse_command("JUMP").has_value());
}

TEST_CASE("perfect channel with no latency is the identity") {
  CommandChannel ch(model(1.0, 0.5, 0.0));
  for (int k = 0; k < 200; ++k) {
    const auto intended = kVocabulary[static_cast<std::size_t>(k * 7) % kCommandCount];
    const auto d = ch.emit(intended, 0.5 * k);
    REQUIRE(d.has_value());
    REQUIRE(d->delivered == intended);
    REQUIRE(d->deliver_at == d->issued_at);
  }
}

TEST_CASE("intents inside the recognition interval are dropped") {
  CommandChannel ch(model(1.0, 1.0, 0.3));
  const auto first = ch.emit(BciCommand::Left, 10.0);
  REQUIRE(first.has_value());
  CHECK(first->deliver_at == doctest::Approx(10.3));
  CHECK_FALSE(ch.emit(BciCommand::Right, 10.1).has_value());
  CHECK_FALSE(ch.emit(BciCommand::Right, 10.99).has_value());
  // Dropped intents do not restart the interval.
  CHECK(ch.emit(BciCommand::Right, 11.0).has_value());
}

TEST_CASE("emission times are always at least T_rec apart") {
  CommandChannel ch(model(0.6, 0.73, 0.1, 4));
  double last = -1e9;
  for (int k = 0; k < 5000; ++k) {
    const double t = 0.01 * k;
    if (const auto d = ch.emit(BciCommand::Forward, t)) {
      REQUIRE(d->issued_at - last >= 0.73);
      last = d->issued_at;
    }
  }
}

TEST_CASE("correct-delivery frequency within 3 sigma of p") {
  for (const double p : {0.5, 0.7, 0.9}) {
    CommandChannel ch(model(p, 1.0, 0.0, 2024));
    const int n = 10000;
    int correct = 0;
    std::map<BciCommand, int> confused;
    for (int k = 0; k < n; ++k) {
      const auto d = ch.emit(BciCommand::Forward, k * 1.0);
      REQUIRE(d.has_value());
      if (d->correct()) {
        ++correct;
      } else {
        REQUIRE(d->delivered != BciCommand::Forward);
        ++confused[d->delivered];
      }
    }
    const double freq = static_cast<double>(correct) / n;
    const double sigma = std::sqrt(p * (1 - p) / n);
    INFO("p=" << p << " observed " << freq);
    CHECK(std::abs(freq - p) <= 3 * sigma);
    if (p == 0.7) {
      CHECK(freq >= 0.69);
      CHECK(freq <= 0.71);
    }

    // Errors spread uniformly over the other eight commands.
    CHECK(confused.size() == kCommandCount - 1);
    const double errors = n - correct;
    for (const auto& [cmd, count] : confused) {
      const double q = 1.0 / 8.0;
      CHECK(std::abs(count - errors * q) <= 5 * std::sqrt(errors * q * (1 - q)));
    }
  }
}

TEST_CASE("seeded determinism") {
  CommandChannel a(model(0.5, 0.2, 0.3, 99)), b(model(0.5, 0.2, 0.3, 99)), c(model(0.5, 0.2, 0.3, 100));
  const auto ra = drive(a, 500, 0.1);
  const auto rb = drive(b, 500, 0.1);
  const auto rc = drive(c, 500, 0.1);
  bool differs = false;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    REQUIRE(ra[i].has_value() == rb[i].has_value());
    if (ra[i]) {
      REQUIRE(ra[i]->delivered == rb[i]->delivered);
      differs = differs || ra[i]->delivered != rc[i]->delivered;
    }
  }
  CHECK(differs);
}

TEST_CASE("channel errors") {
  CommandChannel ch(model(0.7, 1.0, 0.3));
  ch.emit(BciCommand::Hover, 5.0);
  CHECK_THROWS_AS(ch.emit(BciCommand::Hover, 4.9), NonMonotoneTime);
  CHECK_NOTHROW(ch.emit(BciCommand::Hover, 5.0));

  CHECK_THROWS_AS(CommandChannel(model(1.1, 1.0, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(CommandChannel(model(-0.1, 1.0, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(CommandChannel(model(0.5, 0.0, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(CommandChannel(model(0.5, 1.0, -0.1)), std::invalid_argument);
}

TEST_CASE("command to setpoint mapping") {
  const CommandLimits lim{0.1, 0.15, 0.5};
  CHECK(command_to_setpoint(BciCommand::Hover, lim) == CommandSetpoint{});

  const auto fwd = command_to_setpoint(BciCommand::Forward, lim);
  CHECK(fwd == CommandSetpoint{-0.1, 0.0, 0.0, 0.0});
  CHECK(command_to_setpoint(BciCommand::Back, lim).pitch == 0.1);
  CHECK(command_to_setpoint(BciCommand::Right, lim).roll == 0.1);
  CHECK(command_to_setpoint(BciCommand::Left, lim).roll == -0.1);
  CHECK(command_to_setpoint(BciCommand::YawLeft, lim).yaw_rate == 0.15);
  CHECK(command_to_setpoint(BciCommand::YawRight, lim).yaw_rate == -0.15);
  CHECK(command_to_setpoint(BciCommand::Ascend, lim).climb_rate == 0.5);
  CHECK(command_to_setpoint(BciCommand::Descend, lim).climb_rate == -0.5);

  for (const auto c : kVocabulary) {
    const auto s = command_to_setpoint(c, lim);
    const int nonzero = (s.pitch != 0) + (s.roll != 0) + (s.yaw_rate != 0) + (s.climb_rate != 0);
    CHECK(nonzero == (c == BciCommand::Hover ? 0 : 1));
  }
}

TEST_CASE("yaw left then right for equal time returns to the start heading") {
  experiment::ExperimentConfig cfg;
  cfg.channel = model(1.0, 1.0, 0.0);
  experiment::Simulation sim(cfg, experiment::RunMode::BrainOnly, 1, experiment::IntentSource::External);
  const double yaw0 = sim.state().yaw();
  double peak = 0.0;
  for (int k = 0; k < 2000; ++k) {
    if (k == 0) sim.submit_intent(BciCommand::YawLeft);
    if (k == 500) sim.submit_intent(BciCommand::YawRight);
    if (k == 1000) sim.submit_intent(BciCommand::Hover);
    sim.step();
    peak = std::max(peak, sim.state().yaw() - yaw0);
  }
  CHECK(peak == doctest::Approx(0.75).epsilon(0.02));
  CHECK(std::abs(sim.state().yaw() - yaw0) < 1e-3);
}

TEST_CASE("pilot deadband behaviour") {
  const experiment::ExperimentConfig cfg;
  const auto track = experiment::build_runway(200, 157, 5);
  plant::QuadState s;
  s.position = {20.0, 0.1, 5.05};
  CHECK(scripted_pilot(s, track, cfg.pilot, cfg.commands, cfg.plant) == BciCommand::Forward);
  s.velocity = {5.0, 0.0, 0.0};
  CHECK(scripted_pilot(s, track, cfg.pilot, cfg.commands, cfg.plant) == BciCommand::Hover);
}

TEST_CASE("pilot corrects toward the track") {
  const experiment::ExperimentConfig cfg;
  const auto track = experiment::build_runway(200, 157, 5);
  plant::QuadState s;
  s.position = {50.0, 2.0, 5.0};  // 2 m left of the first straight
  CHECK(scripted_pilot(s, track, cfg.pilot, cfg.commands, cfg.plant) == BciCommand::Right);
  s.position = {50.0, -2.0, 5.0};
  CHECK(scripted_pilot(s, track, cfg.pilot, cfg.commands, cfg.plant) == BciCommand::Left);
  s.position = {50.0, 0.0, 3.0};
  CHECK(scripted_pilot(s, track, cfg.pilot, cfg.commands, cfg.plant) == BciCommand::Ascend);
  s.position = {50.0, 0.0, 5.0};
  s.attitude.z() = -0.5;
  CHECK(scripted_pilot(s, track, cfg.pilot, cfg.commands, cfg.plant) == BciCommand::YawLeft);
}

TEST_CASE("brain-only lap with a perfect fast channel") {
  experiment::ExperimentConfig cfg;
  cfg.channel = model(1.0, 0.5, 0.3);
  const auto run = experiment::run_experiment(cfg, experiment::RunMode::BrainOnly, 1);
  CHECK(run.metrics.lap_completion == 1.0);
  CHECK(run.metrics.mean_alpha == 1.0);
  CHECK(run.metrics.mode_switches == 0);
  MESSAGE("brain-only rms cross-track " << run.metrics.rms_cross_track);
}
