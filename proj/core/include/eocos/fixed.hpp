#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace eocos {

// Millionths per unit. Every quantity in the engine is an integer count of
// these, so sums are exact and independent of evaluation order.
inline constexpr std::int64_t kMicroPerUnit = 1'000'000;

// Largest integer part a decimal literal may carry without overflowing int64
// once scaled to micro units.
inline constexpr std::int64_t kMaxIntegerPart = INT64_MAX / kMicroPerUnit;

// Non-negative degree of strength attached to an EoCoS.
struct Intensity {
  std::int64_t micro = 0;

  static constexpr Intensity from_micro(std::int64_t m) { return Intensity{m}; }
  static constexpr Intensity units(std::int64_t whole) {
    return Intensity{whole * kMicroPerUnit};
  }

  friend constexpr auto operator<=>(const Intensity&, const Intensity&) = default;
};

// Signed rational coefficient with six fractional decimal digits.
struct Coefficient {
  std::int64_t micro = 0;

  static constexpr Coefficient from_micro(std::int64_t m) { return Coefficient{m}; }

  friend constexpr auto operator<=>(const Coefficient&, const Coefficient&) = default;
};

// coefficient * value, truncated toward zero at micro precision and saturated
// to the int64 range.
std::int64_t scale_micro(Coefficient c, std::int64_t value_micro);

// Parses `-?[0-9]+(\.[0-9]{1,6})?` into micro units. Returns nullopt on any
// syntax violation or when the value does not fit.
std::optional<std::int64_t> parse_decimal_micro(std::string_view text);

// "1.500000", "-0.250000". Always six fractional digits.
std::string format_fixed(std::int64_t micro);

// Signed variant used for deltas: "+0.500000", "-0.250000", "+0.000000".
std::string format_signed(std::int64_t micro);

// Shortest exact form with at least one fractional digit: "1.5", "0.0", "2.25".
std::string format_decimal(std::int64_t micro);

}  // namespace eocos
