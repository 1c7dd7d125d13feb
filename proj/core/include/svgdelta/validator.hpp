#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svgdelta/svg_model.hpp"

namespace svgdelta {

// Outcome of the binary format-validity judgment over a generated stream.
// reward is +1 iff all three checks pass, -1 otherwise.
struct ValidityVerdict {
    int reward = -1;
    bool syntax_ok = false;       // wire grammar + per-attribute value grammar
    bool frame_count_ok = false;  // frame indices are exactly 1..T
    bool id_topology_ok = false;  // ids resolve in S0, attributes whitelisted
    std::optional<std::string> first_failure;  // "<check>: <detail>"

    // "syntax", "frame_count", "id_topology", or "" when all pass.
    std::string_view first_failed_check() const;
};

struct FormatCheckOptions {
    // Additionally smoke-test renderability by rasterizing frame 1 at a
    // small size; a render failure counts against the syntax check.
    bool strict_render = false;
};

ValidityVerdict check_format(std::string_view stream_text, const SvgDocument& s0,
                             std::size_t expected_updates, const FormatCheckOptions& opts = {});

// Validates one attribute value against its grammar: d through the path
// grammar, transform through the transform grammar, opacities as reals in
// [0,1], stroke-width as a nonnegative real, fill/stroke as colors, values
// and radius as number lists. The removal sentinel is always valid.
bool attr_value_valid(std::string_view attr, std::string_view value, std::string* why = nullptr);

// Grounding report for a reasoning chain: which node ids the text cites and
// whether they all resolve against the base document.
struct CotReport {
    std::vector<std::int64_t> referenced_ids;  // order of first occurrence
    std::vector<std::int64_t> unknown_ids;
    bool accepted = false;
};

// Ids are extracted with the documented pattern (case-insensitive)
//   \bid(?:\s*[=:]\s*|\s+)"?(\d+)"?
// covering the forms `ID 05`, `ID=05`, `id: 5` and `id "05"`; leading zeros
// are normalized. Accepted iff at least one id is cited and all cited ids
// exist in the document.
CotReport check_cot(std::string_view cot_text, const SvgDocument& s0);

}  // namespace svgdelta
