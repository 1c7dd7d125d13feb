#include <cctype>

#include "svgdelta/ssu.hpp"

namespace svgdelta {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// A '-'/'+'/'.' begins a number when a digit follows (signs may also be
// followed by ".5" style fractions).
bool starts_number(std::string_view text, std::size_t i) {
    char c = text[i];
    if (is_digit(c)) return true;
    if (c == '.') return i + 1 < text.size() && is_digit(text[i + 1]);
    if (c == '+' || c == '-') {
        if (i + 1 < text.size() && is_digit(text[i + 1])) return true;
        if (i + 2 < text.size() && text[i + 1] == '.' && is_digit(text[i + 2])) return true;
    }
    return false;
}

}  // namespace

std::size_t count_tokens(std::string_view text) {
    std::size_t count = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (is_space(c)) {
            ++i;
            continue;
        }
        // Control tag <|...|> is one token.
        if (c == '<' && i + 1 < text.size() && text[i + 1] == '|') {
            std::size_t close = text.find("|>", i + 2);
            if (close != std::string_view::npos) {
                ++count;
                i = close + 2;
                continue;
            }
        }
        if (c == ',' || c == ':') {
            ++count;
            ++i;
            continue;
        }
        if (starts_number(text, i)) {
            ++count;
            if (text[i] == '+' || text[i] == '-') ++i;
            while (i < text.size() && is_digit(text[i])) ++i;
            if (i < text.size() && text[i] == '.') {
                ++i;
                while (i < text.size() && is_digit(text[i])) ++i;
            }
            if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < text.size() && (text[j] == '+' || text[j] == '-')) ++j;
                if (j < text.size() && is_digit(text[j])) {
                    i = j;
                    while (i < text.size() && is_digit(text[i])) ++i;
                }
            }
            continue;
        }
        // Word run: everything up to the next separator or number start.
        ++count;
        while (i < text.size()) {
            char w = text[i];
            if (is_space(w) || w == ',' || w == ':') break;
            if (starts_number(text, i)) break;
            if (w == '<' && i + 1 < text.size() && text[i + 1] == '|') break;
            ++i;
        }
    }
    return count;
}

TokenStats token_stats(const FrameSequence& seq) {
    TokenStats stats;
    if (seq.frames.empty()) return stats;

    for (const SvgDocument& frame : seq.frames)
        stats.naive_tokens += count_tokens(serialize_svg(frame));

    const UpdateSequence u = extract(seq);
    stats.stream_tokens = count_tokens(emit_stream(u));
    stats.ssu_tokens = count_tokens(serialize_svg(seq.frames[0])) + stats.stream_tokens;

    stats.ratio = stats.ssu_tokens ? static_cast<double>(stats.naive_tokens) / stats.ssu_tokens : 1.0;
    stats.diff_fraction = stats.ssu_tokens ? static_cast<double>(stats.stream_tokens) / stats.ssu_tokens : 0.0;

    // Fraction of attribute values untouched between adjacent frames.
    if (seq.frames.size() > 1) {
        double sum = 0;
        for (std::size_t t = 1; t < seq.frames.size(); ++t) {
            std::size_t total = 0, unchanged = 0;
            auto recurse = [&](auto&& self, const SvgNode& prev, const SvgNode& next) -> void {
                for (const auto& [name, value] : next.attributes) {
                    ++total;
                    const std::string* old_value = prev.find_attr(name);
                    if (old_value && *old_value == value) ++unchanged;
                }
                for (std::size_t i = 0; i < next.children.size(); ++i)
                    self(self, prev.children[i], next.children[i]);
            };
            recurse(recurse, seq.frames[t - 1].root, seq.frames[t].root);
            sum += total ? static_cast<double>(unchanged) / total : 1.0;
        }
        stats.unchanged_attr_fraction = sum / (seq.frames.size() - 1);
    }
    return stats;
}

}  // namespace svgdelta
