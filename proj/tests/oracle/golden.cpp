#include "oracle/golden.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace oracle {

namespace {

int label_index(const std::string& s) {
  static const char* names[] = {"NB", "NM", "NS", "ZO", "PS", "PM", "PB"};
  for (int i = 0; i < 7; ++i) {
    if (s == names[i]) return i;
  }
  throw std::runtime_error("golden: bad label " + s);
}

GoldenTables load() {
  std::ifstream in(BCUAV_GOLDEN_TABLES, std::ios::binary);
  if (!in) throw std::runtime_error("golden: cannot open " BCUAV_GOLDEN_TABLES);
  GoldenTables g;
  std::stringstream buf;
  buf << in.rdbuf();
  g.text = buf.str();

  std::istringstream lines(g.text);
  std::string line;
  Table* current = nullptr;
  int row = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    if (line == "[Kp]") { current = &g.kp; row = 0; continue; }
    if (line == "[Ki]") { current = &g.ki; row = 0; continue; }
    if (line == "[Kd]") { current = &g.kd; row = 0; continue; }
    if (current == nullptr || row >= 7) throw std::runtime_error("golden: unexpected line " + line);
    std::istringstream cells(line);
    std::string cell;
    for (int col = 0; col < 7; ++col) {
      if (!(cells >> cell)) throw std::runtime_error("golden: short row " + line);
      (*current)[row][col] = label_index(cell);
    }
    ++row;
  }
  return g;
}

}  // namespace

const GoldenTables& golden_tables() {
  static const GoldenTables g = load();
  return g;
}

}  // namespace oracle
