#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bcuav/arbitration/arbiter.hpp"
#include "bcuav/bci/command.hpp"

namespace bcuav::experiment {

/// One simulation step: state at time t and the commands applied over [t, t + dt).
struct TelemetryRow {
  double t = 0.0;
  double x = 0.0, y = 0.0, z = 0.0;
  double roll = 0.0, pitch = 0.0, yaw = 0.0;
  double ref_x = 0.0, ref_y = 0.0, ref_z = 0.0;
  double e_xt = 0.0;
  double rho = 0.0;
  double alpha = 0.0;
  arbitration::AuthorityMode mode = arbitration::AuthorityMode::Brain;
  std::optional<bci::BciCommand> cmd;  // held brain command, empty when no brain path runs
  double kp_eff = 0.0, ki_eff = 0.0, kd_eff = 0.0;  // outer-loop x axis
  std::array<double, 4> motors{};
  bool saturated = false;

  friend bool operator==(const TelemetryRow&, const TelemetryRow&) = default;
};

/// Column order of the CSV contract.
inline constexpr std::array<const char*, 23> kTelemetryColumns = {
    "t",    "x",    "y",     "z",   "roll",   "pitch",  "yaw",    "ref_x", "ref_y", "ref_z", "e_xt", "rho",
    "alpha", "mode", "cmd", "kp_eff", "ki_eff", "kd_eff", "m1",    "m2",    "m3",    "m4",   "saturated"};

std::string telemetry_header();

/// Reals use the shortest representation that parses back to the same double.
std::string format_row(const TelemetryRow& row);

void write_telemetry_csv(std::ostream& out, std::span<const TelemetryRow> rows);

/// Throws std::runtime_error on a header mismatch or malformed row.
std::vector<TelemetryRow> read_telemetry_csv(std::istream& in);

}  // namespace bcuav::experiment
