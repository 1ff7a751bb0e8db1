#include "bcuav/experiment/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "bcuav/bci/pilot.hpp"
#include "bcuav/control/mixer.hpp"

namespace bcuav::experiment {

namespace {

Trajectory make_track(const ExperimentConfig& config) {
  return build_runway(config.track.straight_length, config.track.arc_length, config.track.altitude);
}

const ExperimentConfig& validated(const ExperimentConfig& config) {
  config.validate();
  return config;
}

bool finite_and_bounded(const plant::Vec3& v) {
  return v.allFinite() && v.cwiseAbs().maxCoeff() < kDivergenceBound;
}

}  // namespace

Simulation::Simulation(const ExperimentConfig& config, RunMode mode, std::uint64_t seed, IntentSource source)
    : config_(validated(config)),
      mode_(mode),
      seed_(seed),
      source_(source),
      track_(make_track(config_)),
      scheduler_(fuzzy::MamdaniEngine::normalized(), config_.rules),
      progress_(track_),
      channel_(config_.channel) {
  reset();
}

void Simulation::reset() {
  const ReferencePoint start = track_.reference_at(0.0);
  state_ = plant::QuadState{};
  state_.position = start.position;
  state_.attitude.z() = start.heading;
  steps_ = 0;
  progress_ = ProgressTracker(track_);
  reference_s_ = 0.0;
  yaw_setpoint_ = start.heading;
  pid_x_ = pid_y_ = pid_z_ = control::PidState{};
  attitude_ = control::AttitudeLoopState{};

  bci::ChannelModel model = config_.channel;
  model.seed = seed_;
  channel_ = bci::CommandChannel(model);
  in_flight_.clear();
  held_ = bci::BciCommand::Hover;
  pending_intents_.clear();
  events_.clear();

  status_ = arbitration::FlightStatus{};
  authority_ = arbitration::AuthorityState{};
  set_mode(mode_);
}

void Simulation::set_mode(RunMode mode) {
  mode_ = mode;
  if (mode_ == RunMode::AutoOnly) {
    authority_.alpha = 0.0;
    authority_.mode = arbitration::AuthorityMode::Auto;
  } else if (mode_ == RunMode::BrainOnly) {
    authority_.alpha = 1.0;
    authority_.mode = arbitration::AuthorityMode::Brain;
  }
}

void Simulation::submit_intent(bci::BciCommand intent) { pending_intents_.push_back(intent); }

std::vector<ChannelEvent> Simulation::take_events() { return std::exchange(events_, {}); }

void Simulation::offer_intent(bci::BciCommand intent, double t) {
  const auto delivery = channel_.emit(intent, t);
  if (delivery) in_flight_.push_back(*delivery);
  if (source_ == IntentSource::External) {
    events_.push_back({t, intent, delivery ? std::optional(delivery->delivered) : std::nullopt});
  }
}

void Simulation::deliver_due(double t) {
  while (!in_flight_.empty() && in_flight_.front().deliver_at <= t) {
    held_ = in_flight_.front().delivered;
    in_flight_.pop_front();
  }
}

TelemetryRow Simulation::step() {
  const double t = time();
  const double dt = config_.dt;
  const auto& ctl = config_.controller;
  const auto& params = config_.plant;

  const double progress = progress_.update(state_.position.head<2>());
  const ReferencePoint ref = track_.reference_at(reference_s_);

  status_ = arbitration::evaluate_status(state_, track_, status_, dt, config_.weights);
  if (mode_ == RunMode::Shared) authority_ = arbitration::arbitrate(status_, authority_, t, config_.arbiter);

  if (mode_ != RunMode::AutoOnly) {
    if (source_ == IntentSource::Scripted) {
      offer_intent(bci::scripted_pilot(state_, track_, config_.pilot, config_.commands, params), t);
    } else {
      for (const auto intent : pending_intents_) offer_intent(intent, t);
      pending_intents_.clear();
    }
    deliver_due(t);
  }
  const bci::CommandSetpoint brain =
      held_ ? bci::command_to_setpoint(*held_, config_.commands) : bci::CommandSetpoint{};

  // Outer loop: fuzzy PID on inertial position error.
  const auto x = control::fuzzy_pid_step(ctl.position, pid_x_, ref.position.x() - state_.position.x(), dt,
                                         scheduler_, ctl.position_fuzzy, ctl.position_integral_limit);
  const auto y = control::fuzzy_pid_step(ctl.position, pid_y_, ref.position.y() - state_.position.y(), dt,
                                         scheduler_, ctl.position_fuzzy, ctl.position_integral_limit);
  const auto z = control::fuzzy_pid_step(ctl.altitude, pid_z_, ref.altitude - state_.position.z(), dt,
                                         scheduler_, ctl.altitude_fuzzy, ctl.altitude_integral_limit);
  pid_x_ = x.state;
  pid_y_ = y.state;
  pid_z_ = z.state;
  const plant::Vec3 accel(x.output, y.output, z.output);
  const control::AttitudeSetpoint cascade =
      control::inverse_solution(accel, state_.yaw(), params.mass, params.gravity, ctl.limits);

  // Autopilot expressed in the same terms as a brain command, chosen so that
  // alpha = 0 reproduces the cascade setpoint.
  bci::CommandSetpoint autopilot;
  autopilot.pitch = -cascade.pitch;
  autopilot.roll = cascade.roll;
  autopilot.yaw_rate = plant::wrap_angle(ref.heading - yaw_setpoint_) / ctl.yaw_time_constant;
  autopilot.climb_rate = state_.velocity.z() + accel.z() / ctl.climb_gain;

  const bci::CommandSetpoint blended = arbitration::blend(brain, autopilot, authority_.alpha);
  yaw_setpoint_ = plant::wrap_angle(yaw_setpoint_ + blended.yaw_rate * dt);

  control::AttitudeSetpoint setpoint;
  setpoint.roll = blended.roll;
  setpoint.pitch = -blended.pitch;
  setpoint.yaw = yaw_setpoint_;
  setpoint.thrust = params.mass * (params.gravity + ctl.climb_gain * (blended.climb_rate - state_.velocity.z()));
  setpoint = control::clamp_setpoint(setpoint, ctl.limits);

  const auto inner =
      control::attitude_loop(setpoint, state_, ctl.attitude, attitude_, dt, ctl.attitude_integral_limit);
  attitude_ = inner.state;
  const control::MotorCommands motors = control::mix(setpoint.thrust, inner.torque, params);

  TelemetryRow row;
  row.t = t;
  row.x = state_.position.x();
  row.y = state_.position.y();
  row.z = state_.position.z();
  row.roll = state_.roll();
  row.pitch = state_.pitch();
  row.yaw = state_.yaw();
  row.ref_x = ref.position.x();
  row.ref_y = ref.position.y();
  row.ref_z = ref.altitude;
  row.e_xt = status_.cross_track;
  row.rho = status_.risk;
  row.alpha = authority_.alpha;
  row.mode = authority_.mode;
  if (mode_ != RunMode::AutoOnly) row.cmd = held_;
  row.kp_eff = x.effective.kp;
  row.ki_eff = x.effective.ki;
  row.kd_eff = x.effective.kd;
  row.motors = motors.speeds;
  row.saturated = motors.saturated;

  try {
    state_ = plant::step(state_, motors.speeds, params, dt);
  } catch (const plant::GimbalProximity& e) {
    throw SimulationDiverged(std::string("t=") + std::to_string(t) + ": " + e.what());
  }
  ++steps_;
  if (!finite_and_bounded(state_.position) || !finite_and_bounded(state_.velocity) ||
      !state_.body_rates.allFinite()) {
    throw SimulationDiverged("state left the sanity bound at t=" + std::to_string(time()));
  }

  const double leash = config_.track.reference_leash;
  reference_s_ =
      std::clamp(reference_s_ + config_.track.reference_speed * dt, progress - leash, progress + leash);
  return row;
}

RunResult run_experiment(const ExperimentConfig& config, RunMode mode, std::uint64_t seed) {
  Simulation sim(config, mode, seed);
  RunResult result;
  const double lap = sim.track().total_length();
  const auto max_steps = static_cast<std::size_t>(std::ceil(config.duration / config.dt));
  result.rows.reserve(std::min<std::size_t>(max_steps, 1u << 20));
  while (sim.steps() < max_steps) {
    result.rows.push_back(sim.step());
    if (sim.progress() >= lap) break;
  }
  result.metrics = compute_metrics(result.rows, sim.track());
  return result;
}

}  // namespace bcuav::experiment
