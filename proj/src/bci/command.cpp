#include "bcuav/bci/command.hpp"

namespace bcuav::bci {

namespace {
constexpr std::array<std::string_view, kCommandCount> kNames = {
    "FORWARD", "BACK", "LEFT", "RIGHT", "ASCEND", "DESCEND", "YAW_LEFT", "YAW_RIGHT", "HOVER"};
}  // namespace

std::string_view to_string(BciCommand command) { return kNames[static_cast<std::size_t>(command)]; }

std::optional<BciCommand> parse_command(std::string_view text) {
  for (std::size_t i = 0; i < kCommandCount; ++i) {
    if (kNames[i] == text) return kVocabulary[i];
  }
  return std::nullopt;
}

CommandSetpoint command_to_setpoint(BciCommand command, const CommandLimits& limits) {
  CommandSetpoint sp;
  switch (command) {
    case BciCommand::Forward: sp.pitch = -limits.tilt; break;
    case BciCommand::Back: sp.pitch = limits.tilt; break;
    case BciCommand::Left: sp.roll = -limits.tilt; break;
    case BciCommand::Right: sp.roll = limits.tilt; break;
    case BciCommand::Ascend: sp.climb_rate = limits.climb_rate; break;
    case BciCommand::Descend: sp.climb_rate = -limits.climb_rate; break;
    case BciCommand::YawLeft: sp.yaw_rate = limits.yaw_rate; break;
    case BciCommand::YawRight: sp.yaw_rate = -limits.yaw_rate; break;
    case BciCommand::Hover: break;
  }
  return sp;
}

}  // namespace bcuav::bci
