#pragma once

#include <optional>
#include <string_view>

namespace kreweras {

/// Which Kreweras lattice: origin at a cell centre, or origin at a vertex.
enum class Variant { cell, vertex };

constexpr std::string_view to_string(Variant v) {
  return v == Variant::cell ? "cell" : "vertex";
}

constexpr std::optional<Variant> parse_variant(std::string_view name) {
  if (name == "cell") return Variant::cell;
  if (name == "vertex") return Variant::vertex;
  return std::nullopt;
}

}  // namespace kreweras
