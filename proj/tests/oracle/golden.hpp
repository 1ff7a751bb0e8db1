#pragma once

#include <array>
#include <string>

namespace oracle {

// Label indices 0..6 for NB..PB, rows = e, columns = ec.
using Table = std::array<std::array<int, 7>, 7>;

struct GoldenTables {
  Table kp, ki, kd;
  std::string text;  // file contents, byte for byte
};

// Reads the hand transcription in tests/golden.
const GoldenTables& golden_tables();

}  // namespace oracle
