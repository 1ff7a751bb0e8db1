#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace bcuav::fuzzy {

/// Linguistic labels of a normalized variable, ordered negative-big to positive-big.
enum class Label : std::uint8_t { NB, NM, NS, ZO, PS, PM, PB };

inline constexpr std::size_t kLabelCount = 7;

inline constexpr std::array<Label, kLabelCount> kAllLabels = {
    Label::NB, Label::NM, Label::NS, Label::ZO, Label::PS, Label::PM, Label::PB};

constexpr std::size_t index_of(Label label) { return static_cast<std::size_t>(label); }

constexpr Label label_at(std::size_t index) { return kAllLabels.at(index); }

std::string_view to_string(Label label);

std::optional<Label> parse_label(std::string_view text);

}  // namespace bcuav::fuzzy
