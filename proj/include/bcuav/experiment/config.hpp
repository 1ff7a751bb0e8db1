#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bcuav/arbitration/arbiter.hpp"
#include "bcuav/bci/channel.hpp"
#include "bcuav/bci/pilot.hpp"
#include "bcuav/control/cascade.hpp"
#include "bcuav/control/fuzzy_pid.hpp"
#include "bcuav/fuzzy/rule_table.hpp"
#include "bcuav/plant/quadrotor.hpp"

namespace bcuav::experiment {

class ConfigInvalid : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RunMode { BrainOnly, AutoOnly, Shared };

/// "brain", "auto", "shared".
std::string_view to_string(RunMode mode);
std::optional<RunMode> parse_run_mode(std::string_view text);

struct ControllerConfig {
  control::PidGains position{0.9, 0.12, 1.6};
  control::PidGains altitude{2.0, 0.3, 2.0};
  control::FuzzyScaling position_fuzzy{1.0, 1.0, 0.1, 0.01, 0.1};
  control::FuzzyScaling altitude_fuzzy{1.0, 1.0, 0.2, 0.03, 0.2};
  double position_integral_limit = 5.0;  // m s
  double altitude_integral_limit = 2.0;  // m s
  control::AttitudeGains attitude{{0.6, 0.0, 0.12}, {0.6, 0.0, 0.12}, {0.3, 0.0, 0.1}};
  double attitude_integral_limit = 0.5;  // rad s
  control::SetpointLimits limits{0.35, 30.0};
  double climb_gain = 2.0;          // 1/s, vertical speed loop
  double yaw_time_constant = 0.5;   // s, heading setpoint lag
};

struct TrackConfig {
  double straight_length = 200.0;  // m
  double arc_length = 157.0;       // m
  double altitude = 5.0;           // m
  double reference_speed = 5.0;    // m/s
  double reference_leash = 5.0;    // m, max lead/lag of the reference behind the vehicle's progress
};

struct ServiceConfig {
  int telemetry_decimation = 5;
  double time_scale = 1.0;
  std::size_t telemetry_queue = 64;
};

/// Regression values fixed after tuning; checked by the acceptance suite.
struct RegressionBounds {
  double auto_rms_cross_track_max = 0.45;  // m
};

struct ExperimentConfig {
  double dt = 0.01;         // s
  double duration = 300.0;  // s, upper bound; a run also stops after one lap
  std::uint64_t seed = 1;
  RunMode mode = RunMode::Shared;

  plant::QuadParams plant;
  ControllerConfig controller;
  bci::ChannelModel channel;
  bci::CommandLimits commands;
  bci::PilotConfig pilot;
  arbitration::StatusWeights weights;
  arbitration::ArbiterConfig arbiter;
  TrackConfig track;
  fuzzy::RuleSet rules = fuzzy::RuleSet::builtin();
  RegressionBounds regression;
  ServiceConfig service;

  /// Throws ConfigInvalid naming the first offending field.
  void validate() const;
};

/// Parses a JSON document. Missing fields keep their defaults; unknown fields
/// are rejected. Rule-table paths are resolved relative to `base_dir`.
ExperimentConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});

ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace bcuav::experiment
