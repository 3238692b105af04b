#include "eocos/fixed.hpp"

#include <cstdlib>
#include <limits>

namespace eocos {

std::int64_t scale_micro(Coefficient c, std::int64_t value_micro) {
  const __int128 product = static_cast<__int128>(c.micro) * value_micro;
  // Integer division truncates toward zero.
  const __int128 scaled = product / kMicroPerUnit;
  constexpr auto lo = std::numeric_limits<std::int64_t>::min();
  constexpr auto hi = std::numeric_limits<std::int64_t>::max();
  if (scaled > hi) return hi;
  if (scaled < lo) return lo;
  return static_cast<std::int64_t>(scaled);
}

std::optional<std::int64_t> parse_decimal_micro(std::string_view text) {
  bool negative = false;
  std::size_t pos = 0;
  if (pos < text.size() && text[pos] == '-') {
    negative = true;
    ++pos;
  }
  const auto is_digit = [](char ch) { return ch >= '0' && ch <= '9'; };

  std::int64_t whole = 0;
  std::size_t whole_digits = 0;
  while (pos < text.size() && is_digit(text[pos])) {
    if (whole > kMaxIntegerPart / 10) return std::nullopt;
    whole = whole * 10 + (text[pos] - '0');
    if (whole > kMaxIntegerPart) return std::nullopt;
    ++pos;
    ++whole_digits;
  }
  if (whole_digits == 0) return std::nullopt;

  std::int64_t frac = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    std::size_t frac_digits = 0;
    while (pos < text.size() && is_digit(text[pos])) {
      if (frac_digits == 6) return std::nullopt;
      frac = frac * 10 + (text[pos] - '0');
      ++pos;
      ++frac_digits;
    }
    if (frac_digits == 0) return std::nullopt;
    for (std::size_t i = frac_digits; i < 6; ++i) frac *= 10;
  }
  if (pos != text.size()) return std::nullopt;

  const std::int64_t magnitude = whole * kMicroPerUnit + frac;
  return negative ? -magnitude : magnitude;
}

namespace {

std::string fixed_digits(std::uint64_t magnitude) {
  std::string whole = std::to_string(magnitude / kMicroPerUnit);
  std::string frac = std::to_string(magnitude % kMicroPerUnit);
  frac.insert(0, 6 - frac.size(), '0');
  return whole + "." + frac;
}

std::uint64_t magnitude_of(std::int64_t micro) {
  // Well-defined for INT64_MIN as well.
  return micro < 0 ? ~static_cast<std::uint64_t>(micro) + 1 : static_cast<std::uint64_t>(micro);
}

}  // namespace

std::string format_fixed(std::int64_t micro) {
  const std::string digits = fixed_digits(magnitude_of(micro));
  return micro < 0 ? "-" + digits : digits;
}

std::string format_signed(std::int64_t micro) {
  return (micro < 0 ? "-" : "+") + fixed_digits(magnitude_of(micro));
}

std::string format_decimal(std::int64_t micro) {
  std::string out = format_fixed(micro);
  while (out.back() == '0' && out[out.size() - 2] != '.') out.pop_back();
  return out;
}

}  // namespace eocos
