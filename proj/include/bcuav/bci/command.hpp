#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace bcuav::bci {

/// Recognizable command vocabulary. Declaration order is the tie-break order
/// used by the scripted pilot.
enum class BciCommand : std::uint8_t { Forward, Back, Left, Right, Ascend, Descend, YawLeft, YawRight, Hover };

inline constexpr std::size_t kCommandCount = 9;

inline constexpr std::array<BciCommand, kCommandCount> kVocabulary = {
    BciCommand::Forward, BciCommand::Back,    BciCommand::Left,     BciCommand::Right, BciCommand::Ascend,
    BciCommand::Descend, BciCommand::YawLeft, BciCommand::YawRight, BciCommand::Hover};

std::string_view to_string(BciCommand command);

/// Accepts the upper-case wire names ("FORWARD", "YAW_LEFT", ...).
std::optional<BciCommand> parse_command(std::string_view text);

/// Magnitudes injected by one held command.
struct CommandLimits {
  double tilt = 0.1;        // rad
  double yaw_rate = 0.15;   // rad/s
  double climb_rate = 0.5;  // m/s
};

/// Attitude-level effect of a command, in pilot terms: pitch is positive
/// nose-up, roll positive right-wing-down, yaw rate positive to the left
/// (counter-clockwise seen from above), climb rate positive up.
struct CommandSetpoint {
  double pitch = 0.0;
  double roll = 0.0;
  double yaw_rate = 0.0;
  double climb_rate = 0.0;

  friend bool operator==(const CommandSetpoint&, const CommandSetpoint&) = default;
};

CommandSetpoint command_to_setpoint(BciCommand command, const CommandLimits& limits);

}  // namespace bcuav::bci
