#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bcuav/fuzzy/labels.hpp"

namespace bcuav::fuzzy {

enum class GainTarget : std::uint8_t { Kp, Ki, Kd };

std::string_view to_string(GainTarget target);

class RuleTableParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 7x7 grid of consequent labels, rows indexed by the error label and
/// columns by the error-rate label.
class RuleTable {
 public:
  using Grid = std::array<std::array<Label, kLabelCount>, kLabelCount>;

  RuleTable(GainTarget target, const Grid& cells) : target_(target), cells_(cells) {}

  GainTarget target() const { return target_; }

  Label lookup(Label error, Label error_rate) const {
    return cells_[index_of(error)][index_of(error_rate)];
  }

  const Grid& cells() const { return cells_; }

  /// Parses seven lines of seven whitespace separated labels. Blank lines and
  /// text after '#' are ignored.
  static RuleTable parse(GainTarget target, std::string_view text);

  /// Seven lines of seven labels, single-space separated, newline terminated.
  std::string to_text() const;

 private:
  GainTarget target_;
  Grid cells_;
};

/// The three gain-increment tables used by the fuzzy PID.
struct RuleSet {
  RuleTable kp;
  RuleTable ki;
  RuleTable kd;

  /// Tables compiled into the library.
  static const RuleSet& builtin();

  const RuleTable& for_target(GainTarget target) const;
};

/// Text dump of all three tables: a "[Kp]" / "[Ki]" / "[Kd]" header line
/// followed by the 7x7 grid, tables separated by a blank line.
std::string dump_tables(const RuleSet& rules);

}  // namespace bcuav::fuzzy
