#pragma once

#include <optional>
#include <string_view>

namespace missmass {

// Which tail of M - EM a bound or oracle refers to.
enum class Side { Upper, Lower };

constexpr std::string_view side_name(Side s) noexcept {
  return s == Side::Upper ? "upper" : "lower";
}

inline std::optional<Side> parse_side(std::string_view s) {
  if (s == "upper") return Side::Upper;
  if (s == "lower") return Side::Lower;
  return std::nullopt;
}

}  // namespace missmass
