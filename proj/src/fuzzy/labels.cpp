#include "bcuav/fuzzy/labels.hpp"

namespace bcuav::fuzzy {

namespace {
constexpr std::array<std::string_view, kLabelCount> kNames = {"NB", "NM", "NS", "ZO", "PS", "PM", "PB"};
}  // namespace

std::string_view to_string(Label label) { return kNames[index_of(label)]; }

std::optional<Label> parse_label(std::string_view text) {
  for (std::size_t i = 0; i < kLabelCount; ++i) {
    if (kNames[i] == text) return label_at(i);
  }
  return std::nullopt;
}

}  // namespace bcuav::fuzzy
