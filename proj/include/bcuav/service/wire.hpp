#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "bcuav/bci/command.hpp"
#include "bcuav/experiment/config.hpp"
#include "bcuav/experiment/simulation.hpp"
#include "bcuav/experiment/telemetry.hpp"

// JSON messages exchanged over the /ws endpoint. Every message carries a
// "type" and a per-direction, strictly increasing "seq".
//
// client -> server
//   {"type":"command","seq":N,"command":"FORWARD","client_time":T?}
//   {"type":"control","seq":N,"action":"start|pause|reset|set-mode","mode":"brain|auto|shared"?}
// server -> client
//   {"type":"telemetry","seq":N,"data":{...}}
//   {"type":"ack","seq":N,"ack":M,"text":"..."}
//   {"type":"error","seq":N,"text":"..."}
//   {"type":"gap","seq":N,"dropped":K}   // K telemetry messages were discarded

namespace bcuav::service {

class MalformedMessage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandMessage {
  std::uint64_t seq = 0;
  bci::BciCommand command = bci::BciCommand::Hover;
  std::optional<double> client_time;  // informational only
};

enum class ControlAction { Start, Pause, Reset, SetMode };

struct ControlMessage {
  std::uint64_t seq = 0;
  ControlAction action = ControlAction::Start;
  std::optional<experiment::RunMode> mode;  // required for SetMode
};

using ClientMessage = std::variant<CommandMessage, ControlMessage>;

/// Throws MalformedMessage describing the first problem found.
ClientMessage parse_client_message(std::string_view text);

std::string encode_command(const CommandMessage& message);
std::string encode_control(const ControlMessage& message);

/// Server-side view of one published simulation step.
struct TelemetrySnapshot {
  experiment::TelemetryRow row;
  double progress = 0.0;
  std::string run_mode;
  std::vector<experiment::ChannelEvent> events;
};

/// Body of a telemetry message, without type/seq.
nlohmann::json telemetry_payload(const TelemetrySnapshot& snapshot);

/// Adds "seq" and serializes.
std::string finalize(nlohmann::json message, std::uint64_t seq);

nlohmann::json make_telemetry(const nlohmann::json& payload);
nlohmann::json make_ack(std::uint64_t acked, std::string_view text);
nlohmann::json make_error(std::string_view text);
nlohmann::json make_gap(std::uint64_t dropped);

}  // namespace bcuav::service
