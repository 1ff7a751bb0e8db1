#include "bcuav/experiment/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace bcuav::experiment {

RunMetrics compute_metrics(std::span<const TelemetryRow> rows, const Trajectory& track) {
  RunMetrics m;
  if (rows.empty()) return m;
  ProgressTracker progress(track);
  double sum_xt = 0.0;
  double sum_alt = 0.0;
  double sum_alpha = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    sum_xt += r.e_xt * r.e_xt;
    sum_alt += (r.z - r.ref_z) * (r.z - r.ref_z);
    sum_alpha += r.alpha;
    m.max_cross_track = std::max(m.max_cross_track, std::abs(r.e_xt));
    if (i > 0 && r.mode != rows[i - 1].mode) ++m.mode_switches;
    progress.update({r.x, r.y});
  }
  const auto n = static_cast<double>(rows.size());
  m.rms_cross_track = std::sqrt(sum_xt / n);
  m.rms_altitude_error = std::sqrt(sum_alt / n);
  m.mean_alpha = sum_alpha / n;
  m.lap_completion = std::clamp(progress.max_progress() / track.total_length(), 0.0, 1.0);
  m.steps = rows.size();
  m.duration = rows.back().t;
  return m;
}

std::string metrics_json(const RunMetrics& m, int indent) {
  nlohmann::ordered_json j;
  j["rms_cross_track"] = m.rms_cross_track;
  j["max_cross_track"] = m.max_cross_track;
  j["rms_altitude_error"] = m.rms_altitude_error;
  j["lap_completion"] = m.lap_completion;
  j["mode_switches"] = m.mode_switches;
  j["mean_alpha"] = m.mean_alpha;
  j["steps"] = m.steps;
  j["duration"] = m.duration;
  return j.dump(indent);
}

}  // namespace bcuav::experiment
