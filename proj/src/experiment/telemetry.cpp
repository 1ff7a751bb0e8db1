#include "bcuav/experiment/telemetry.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace bcuav::experiment {

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double to_double(std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::runtime_error("bad number in telemetry: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string telemetry_header() {
  std::string header;
  for (const char* column : kTelemetryColumns) {
    if (!header.empty()) header += ',';
    header += column;
  }
  return header;
}

std::string format_row(const TelemetryRow& r) {
  const std::string_view cmd = r.cmd ? bci::to_string(*r.cmd) : std::string_view("NONE");
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", r.t, r.x, r.y, r.z,
                     r.roll, r.pitch, r.yaw, r.ref_x, r.ref_y, r.ref_z, r.e_xt, r.rho, r.alpha,
                     arbitration::to_string(r.mode), cmd, r.kp_eff, r.ki_eff, r.kd_eff, r.motors[0], r.motors[1],
                     r.motors[2], r.motors[3], r.saturated ? 1 : 0);
}

void write_telemetry_csv(std::ostream& out, std::span<const TelemetryRow> rows) {
  out << telemetry_header() << '\n';
  for (const auto& row : rows) out << format_row(row) << '\n';
}

std::vector<TelemetryRow> read_telemetry_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != telemetry_header()) throw std::runtime_error("telemetry header mismatch");
  std::vector<TelemetryRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != kTelemetryColumns.size()) throw std::runtime_error("telemetry row has wrong column count");
    TelemetryRow r;
    r.t = to_double(f[0]);
    r.x = to_double(f[1]);
    r.y = to_double(f[2]);
    r.z = to_double(f[3]);
    r.roll = to_double(f[4]);
    r.pitch = to_double(f[5]);
    r.yaw = to_double(f[6]);
    r.ref_x = to_double(f[7]);
    r.ref_y = to_double(f[8]);
    r.ref_z = to_double(f[9]);
    r.e_xt = to_double(f[10]);
    r.rho = to_double(f[11]);
    r.alpha = to_double(f[12]);
    const auto mode = arbitration::parse_authority_mode(f[13]);
    if (!mode) throw std::runtime_error("bad mode in telemetry");
    r.mode = *mode;
    if (f[14] != "NONE") {
      const auto cmd = bci::parse_command(f[14]);
      if (!cmd) throw std::runtime_error("bad command in telemetry");
      r.cmd = *cmd;
    }
    r.kp_eff = to_double(f[15]);
    r.ki_eff = to_double(f[16]);
    r.kd_eff = to_double(f[17]);
    for (std::size_t i = 0; i < 4; ++i) r.motors[i] = to_double(f[18 + i]);
    r.saturated = f[22] == "1";
    rows.push_back(r);
  }
  return rows;
}

}  // namespace bcuav::experiment
