#include "bcuav/service/wire.hpp"

namespace bcuav::service {

namespace {

using nlohmann::json;

std::uint64_t read_seq(const json& j) {
  const auto it = j.find("seq");
  if (it == j.end() || !it->is_number_unsigned()) throw MalformedMessage("missing or invalid seq");
  return it->get<std::uint64_t>();
}

std::string read_string(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string()) throw MalformedMessage(std::string("missing or invalid ") + key);
  return it->get<std::string>();
}

constexpr std::string_view action_name(ControlAction action) {
  switch (action) {
    case ControlAction::Start: return "start";
    case ControlAction::Pause: return "pause";
    case ControlAction::Reset: return "reset";
    case ControlAction::SetMode: return "set-mode";
  }
  return "?";
}

}  // namespace

ClientMessage parse_client_message(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw MalformedMessage("message is not a JSON object");
  const std::string type = read_string(j, "type");
  if (type == "command") {
    CommandMessage m;
    m.seq = read_seq(j);
    const auto cmd = bci::parse_command(read_string(j, "command"));
    if (!cmd) throw MalformedMessage("unknown command");
    m.command = *cmd;
    if (const auto it = j.find("client_time"); it != j.end()) {
      if (!it->is_number()) throw MalformedMessage("client_time must be a number");
      m.client_time = it->get<double>();
    }
    return m;
  }
  if (type == "control") {
    ControlMessage m;
    m.seq = read_seq(j);
    const std::string action = read_string(j, "action");
    bool known = false;
    for (const auto a : {ControlAction::Start, ControlAction::Pause, ControlAction::Reset, ControlAction::SetMode}) {
      if (action_name(a) == action) {
        m.action = a;
        known = true;
      }
    }
    if (!known) throw MalformedMessage("unknown control action");
    if (m.action == ControlAction::SetMode) {
      m.mode = experiment::parse_run_mode(read_string(j, "mode"));
      if (!m.mode) throw MalformedMessage("mode must be brain|auto|shared");
    }
    return m;
  }
  throw MalformedMessage("unknown message type '" + type + "'");
}

std::string encode_command(const CommandMessage& message) {
  json j = {{"type", "command"}, {"seq", message.seq}, {"command", bci::to_string(message.command)}};
  if (message.client_time) j["client_time"] = *message.client_time;
  return j.dump();
}

std::string encode_control(const ControlMessage& message) {
  json j = {{"type", "control"}, {"seq", message.seq}, {"action", action_name(message.action)}};
  if (message.mode) j["mode"] = experiment::to_string(*message.mode);
  return j.dump();
}

json telemetry_payload(const TelemetrySnapshot& s) {
  const auto& r = s.row;
  json events = json::array();
  for (const auto& e : s.events) {
    json ev = {{"t", e.t}, {"intended", bci::to_string(e.intended)}};
    if (e.delivered) {
      ev["delivered"] = bci::to_string(*e.delivered);
      ev["outcome"] = *e.delivered == e.intended ? "delivered" : "corrupted";
    } else {
      ev["delivered"] = nullptr;
      ev["outcome"] = "dropped";
    }
    events.push_back(std::move(ev));
  }
  return json{{"t", r.t},
              {"x", r.x},
              {"y", r.y},
              {"z", r.z},
              {"roll", r.roll},
              {"pitch", r.pitch},
              {"yaw", r.yaw},
              {"ref_x", r.ref_x},
              {"ref_y", r.ref_y},
              {"ref_z", r.ref_z},
              {"e_xt", r.e_xt},
              {"rho", r.rho},
              {"alpha", r.alpha},
              {"mode", arbitration::to_string(r.mode)},
              {"cmd", r.cmd ? bci::to_string(*r.cmd) : std::string_view("NONE")},
              {"kp_eff", r.kp_eff},
              {"ki_eff", r.ki_eff},
              {"kd_eff", r.kd_eff},
              {"motors", r.motors},
              {"saturated", r.saturated},
              {"progress", s.progress},
              {"run_mode", s.run_mode},
              {"events", std::move(events)}};
}

std::string finalize(json message, std::uint64_t seq) {
  message["seq"] = seq;
  return message.dump();
}

json make_telemetry(const json& payload) { return {{"type", "telemetry"}, {"data", payload}}; }

json make_ack(std::uint64_t acked, std::string_view text) { return {{"type", "ack"}, {"ack", acked}, {"text", text}}; }

json make_error(std::string_view text) { return {{"type", "error"}, {"text", text}}; }

json make_gap(std::uint64_t dropped) { return {{"type", "gap"}, {"dropped", dropped}}; }

}  // namespace bcuav::service
