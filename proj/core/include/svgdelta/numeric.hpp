#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace svgdelta {

// Canonical number formatting used everywhere a numeric attribute value is
// emitted: round half-to-even at 2 decimal places, strip trailing zeros and
// a trailing decimal point, normalize -0 to 0.
//
//   1.005  -> "1"      (the stored double is slightly below 1.005)
//   0.125  -> "0.12"   (tie, rounds to even)
//   5.10   -> "5.1"
//   -0.001 -> "0"
std::string format_number(double value);

// format_number applied to each element, joined by `sep`.
std::string format_number_list(const std::vector<double>& values, std::string_view sep);

// Strict double parse of an entire token (no trailing garbage). Rejects
// NaN/inf spellings; accepts the SVG number grammar (sign, decimals,
// exponent).
std::optional<double> parse_number(std::string_view text);

// Splits on whitespace and commas, parses every token with parse_number.
// Empty optional if any token is not a number.
std::optional<std::vector<double>> parse_number_list(std::string_view text);

}  // namespace svgdelta
