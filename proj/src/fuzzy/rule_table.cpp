#include "bcuav/fuzzy/rule_table.hpp"

#include <sstream>
#include <vector>

namespace bcuav::fuzzy {

namespace {

// Rows: error NB..PB. Columns: error rate NB..PB.
constexpr std::string_view kBuiltinKp = R"(
PB PB PB PB PB PB PM
PM PM PM PM PM PM PM
PS PS PS PS PS PS PS
PS ZO ZO NS ZO ZO PS
PS PS PS PS PS PS PS
PM PM PM PM PM PM PM
PM PM PS PS PS PM PB
)";

// Row PS breaks the symmetry of its neighbours; kept as published.
constexpr std::string_view kBuiltinKi = R"(
NB NB NB NB NB NB NB
NM NM NM NM NM NM NM
NS ZO PM PM PM ZO NS
ZO PS PM PB PM PS ZO
PM ZO PM PM PM ZO NS
NM NM NM NM NM NM NM
NB NB NB NB NB NB NB
)";

constexpr std::string_view kBuiltinKd = R"(
PB PM PS PS PS PM PM
NS NS NS NS NS NS PM
PS NS NM PM NM NS PS
PS NS NM NM NM NS PS
PS NS NM PM NM NS PS
PM NS NS NS NS NS NS
PB PM PS PS PS PM PM
)";

}  // namespace

std::string_view to_string(GainTarget target) {
  switch (target) {
    case GainTarget::Kp: return "Kp";
    case GainTarget::Ki: return "Ki";
    case GainTarget::Kd: return "Kd";
  }
  return "?";
}

RuleTable RuleTable::parse(GainTarget target, std::string_view text) {
  Grid grid{};
  std::size_t row = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    if (row == kLabelCount) {
      throw RuleTableParseError("line " + std::to_string(line_no) + ": more than 7 rows");
    }
    if (tokens.size() != kLabelCount) {
      throw RuleTableParseError("line " + std::to_string(line_no) + ": expected 7 labels, got " +
                                std::to_string(tokens.size()));
    }
    for (std::size_t col = 0; col < kLabelCount; ++col) {
      const auto label = parse_label(tokens[col]);
      if (!label) {
        throw RuleTableParseError("line " + std::to_string(line_no) + ": unknown label '" + tokens[col] + "'");
      }
      grid[row][col] = *label;
    }
    ++row;
  }
  if (row != kLabelCount) {
    throw RuleTableParseError("expected 7 rows, got " + std::to_string(row));
  }
  return RuleTable(target, grid);
}

std::string RuleTable::to_text() const {
  std::string out;
  for (const auto& row : cells_) {
    for (std::size_t col = 0; col < kLabelCount; ++col) {
      if (col > 0) out += ' ';
      out += to_string(row[col]);
    }
    out += '\n';
  }
  return out;
}

const RuleSet& RuleSet::builtin() {
  static const RuleSet rules{RuleTable::parse(GainTarget::Kp, kBuiltinKp),
                             RuleTable::parse(GainTarget::Ki, kBuiltinKi),
                             RuleTable::parse(GainTarget::Kd, kBuiltinKd)};
  return rules;
}

const RuleTable& RuleSet::for_target(GainTarget target) const {
  switch (target) {
    case GainTarget::Kp: return kp;
    case GainTarget::Ki: return ki;
    case GainTarget::Kd: return kd;
  }
  return kp;
}

std::string dump_tables(const RuleSet& rules) {
  std::string out;
  for (const RuleTable* table : {&rules.kp, &rules.ki, &rules.kd}) {
    if (!out.empty()) out += '\n';
    out += '[';
    out += to_string(table->target());
    out += "]\n";
    out += table->to_text();
  }
  return out;
}

}  // namespace bcuav::fuzzy
