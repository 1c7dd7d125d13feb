#include "svgdelta/numeric.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace svgdelta {

std::string format_number(double value) {
    if (!std::isfinite(value)) return "0";

    double scaled = value * 100.0;
    // Out of exact integer range for a double; the 0.01 grid is meaningless
    // there, so fall back to plain rounding.
    if (std::abs(scaled) >= 9e15) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.0f", value);
        return buf;
    }

    // nearbyint in the default rounding mode is round-half-to-even.
    long long n = static_cast<long long>(std::nearbyint(scaled));
    if (n == 0) return "0";

    long long whole = n / 100;
    long long frac = std::llabs(n % 100);

    std::string out;
    if (n < 0 && whole == 0) out += '-';
    out += std::to_string(whole);
    if (frac != 0) {
        out += '.';
        if (frac % 10 == 0) {
            out += static_cast<char>('0' + frac / 10);
        } else {
            out += static_cast<char>('0' + frac / 10);
            out += static_cast<char>('0' + frac % 10);
        }
    }
    return out;
}

std::string format_number_list(const std::vector<double>& values, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += sep;
        out += format_number(values[i]);
    }
    return out;
}

std::optional<double> parse_number(std::string_view text) {
    if (text.empty()) return std::nullopt;
    // from_chars does not accept a leading '+'.
    std::string_view body = text;
    if (body.front() == '+') body.remove_prefix(1);
    if (body.empty()) return std::nullopt;
    double value = 0;
    const char* first = body.data();
    const char* last = body.data() + body.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    if (!std::isfinite(value)) return std::nullopt;
    return value;
}

std::optional<std::vector<double>> parse_number_list(std::string_view text) {
    std::vector<double> out;
    std::size_t i = 0;
    auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ','; };
    while (i < text.size()) {
        while (i < text.size() && is_sep(text[i])) ++i;
        if (i >= text.size()) break;
        std::size_t j = i;
        while (j < text.size() && !is_sep(text[j])) ++j;
        auto v = parse_number(text.substr(i, j - i));
        if (!v) return std::nullopt;
        out.push_back(*v);
        i = j;
    }
    return out;
}

}  // namespace svgdelta
