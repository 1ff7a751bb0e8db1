#pragma once

#include <span>
#include <string>

#include "bcuav/experiment/telemetry.hpp"
#include "bcuav/experiment/trajectory.hpp"

namespace bcuav::experiment {

struct RunMetrics {
  double rms_cross_track = 0.0;     // m
  double max_cross_track = 0.0;     // m, max |e_xt|
  double rms_altitude_error = 0.0;  // m, z - ref_z
  double lap_completion = 0.0;      // in [0, 1]
  int mode_switches = 0;
  double mean_alpha = 0.0;
  std::size_t steps = 0;
  double duration = 0.0;  // s, time of the last row

  friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

/// Metrics derived only from logged columns, so a log read back from CSV
/// reproduces them exactly.
RunMetrics compute_metrics(std::span<const TelemetryRow> rows, const Trajectory& track);

std::string metrics_json(const RunMetrics& metrics, int indent = 2);

}  // namespace bcuav::experiment
