#pragma once

#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcuav/arbitration/arbiter.hpp"
#include "bcuav/bci/channel.hpp"
#include "bcuav/control/cascade.hpp"
#include "bcuav/control/fuzzy_pid.hpp"
#include "bcuav/experiment/config.hpp"
#include "bcuav/experiment/metrics.hpp"
#include "bcuav/experiment/telemetry.hpp"
#include "bcuav/experiment/trajectory.hpp"
#include "bcuav/plant/quadrotor.hpp"

namespace bcuav::experiment {

class SimulationDiverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Magnitude beyond which a position (m) or velocity (m/s) component counts as divergence.
inline constexpr double kDivergenceBound = 1e4;

/// Where brain intents come from.
enum class IntentSource {
  Scripted,  // the greedy pilot proposes an intent every step
  External,  // intents are pushed through submit_intent (live operator)
};

/// What happened to one intent on the command channel.
struct ChannelEvent {
  double t = 0.0;
  bci::BciCommand intended = bci::BciCommand::Hover;
  std::optional<bci::BciCommand> delivered;  // empty when dropped by the rate limit
};

/// Fixed-step shared-control closed loop: plant, cascade autopilot, command
/// channel, brain setpoints and the arbiter.
class Simulation {
 public:
  /// Throws ConfigInvalid when the configuration does not validate.
  Simulation(const ExperimentConfig& config, RunMode mode, std::uint64_t seed,
             IntentSource source = IntentSource::Scripted);

  // Holds internal references into its own track.
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  /// Computes the commands for the current state, logs them and advances one
  /// dt. Throws SimulationDiverged.
  TelemetryRow step();

  /// Live intake: the intent is stamped with the current simulation time.
  void submit_intent(bci::BciCommand intent);

  /// Channel outcomes since the previous call.
  std::vector<ChannelEvent> take_events();

  void set_mode(RunMode mode);
  void reset();

  double time() const { return static_cast<double>(steps_) * config_.dt; }
  std::size_t steps() const { return steps_; }
  RunMode mode() const { return mode_; }
  const plant::QuadState& state() const { return state_; }
  const Trajectory& track() const { return track_; }
  const arbitration::AuthorityState& authority() const { return authority_; }
  double progress() const { return progress_.progress(); }
  const ExperimentConfig& config() const { return config_; }

 private:
  void deliver_due(double t);
  void offer_intent(bci::BciCommand intent, double t);

  ExperimentConfig config_;
  RunMode mode_;
  std::uint64_t seed_;
  IntentSource source_;
  Trajectory track_;
  control::FuzzyGainScheduler scheduler_;

  plant::QuadState state_;
  std::size_t steps_ = 0;
  ProgressTracker progress_;
  double reference_s_ = 0.0;
  double yaw_setpoint_ = 0.0;

  control::PidState pid_x_, pid_y_, pid_z_;
  control::AttitudeLoopState attitude_;

  bci::CommandChannel channel_;
  std::deque<bci::Delivery> in_flight_;
  std::optional<bci::BciCommand> held_;
  std::vector<bci::BciCommand> pending_intents_;
  std::vector<ChannelEvent> events_;

  arbitration::FlightStatus status_;
  arbitration::AuthorityState authority_;
};

struct RunResult {
  std::vector<TelemetryRow> rows;
  RunMetrics metrics;
};

/// Runs until one lap of progress or the configured duration, whichever comes first.
RunResult run_experiment(const ExperimentConfig& config, RunMode mode, std::uint64_t seed);

}  // namespace bcuav::experiment
