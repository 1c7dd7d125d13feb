#include "svgdelta/validator.hpp"

#include <algorithm>
#include <regex>

#include "svgdelta/errors.hpp"
#include "svgdelta/numeric.hpp"
#include "svgdelta/path_data.hpp"
#include "svgdelta/raster.hpp"
#include "svgdelta/ssu.hpp"
#include "svgdelta/transform.hpp"

namespace svgdelta {

std::string_view ValidityVerdict::first_failed_check() const {
    if (!first_failure) return "";
    const std::string& f = *first_failure;
    std::size_t colon = f.find(':');
    return std::string_view(f).substr(0, colon == std::string::npos ? f.size() : colon);
}

bool attr_value_valid(std::string_view attr, std::string_view value, std::string* why) {
    auto bad = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (value == kRemovalSentinel) return true;

    if (attr == "d") {
        try {
            parse_path(value);
        } catch (const PathSyntaxError& e) {
            return bad(e.what());
        }
        return true;
    }
    if (attr == "transform") {
        try {
            parse_transform(value);
        } catch (const TransformSyntaxError& e) {
            return bad(e.what());
        }
        return true;
    }
    if (attr == "opacity" || attr == "fill-opacity" || attr == "stroke-opacity") {
        auto n = parse_number(value);
        if (!n) return bad(std::string(attr) + " is not a number: \"" + std::string(value) + "\"");
        if (*n < 0.0 || *n > 1.0)
            return bad(std::string(attr) + " value " + std::string(value) + " outside [0, 1]");
        return true;
    }
    if (attr == "stroke-width") {
        auto n = parse_number(value);
        if (!n || *n < 0)
            return bad("stroke-width must be a nonnegative number, got \"" + std::string(value) + "\"");
        return true;
    }
    if (attr == "fill" || attr == "stroke") {
        if (!parse_color(value))
            return bad(std::string(attr) + " is not a recognizable color: \"" + std::string(value) + "\"");
        return true;
    }
    if (attr == "values") {
        auto nums = parse_number_list(value);
        if (!nums || nums->empty()) return bad("values must hold at least one number");
        return true;
    }
    if (attr == "radius") {
        auto nums = parse_number_list(value);
        if (!nums || nums->empty() || nums->size() > 2)
            return bad("radius takes 1 or 2 numbers");
        for (double n : *nums)
            if (n < 0) return bad("radius must be nonnegative");
        return true;
    }
    // Attributes outside the whitelist are the id/topology check's concern.
    return true;
}

ValidityVerdict check_format(std::string_view stream_text, const SvgDocument& s0,
                             std::size_t expected_updates, const FormatCheckOptions& opts) {
    ValidityVerdict verdict;
    std::optional<std::string> syntax_fail, frame_fail, topology_fail;

    wire::ScanResult scan = wire::scan_stream(stream_text);
    if (!scan.ok) {
        verdict.first_failure = "syntax: " + scan.diagnostic;
        return verdict;  // nothing else is evaluable
    }

    // (1) value grammars and in-frame duplicates.
    for (const wire::Frame& frame : scan.frames) {
        std::vector<std::pair<std::int64_t, std::string_view>> seen;
        for (const wire::Entry& entry : frame.entries) {
            std::string why;
            if (!syntax_fail && !attr_value_valid(entry.attr, entry.value, &why))
                syntax_fail = "line " + std::to_string(entry.line) + ": " + why;
            auto key = std::make_pair(entry.id, std::string_view(entry.attr));
            if (!syntax_fail && std::find(seen.begin(), seen.end(), key) != seen.end())
                syntax_fail = "line " + std::to_string(entry.line) + ": duplicate update for id " +
                              std::to_string(entry.id) + " attribute " + entry.attr;
            seen.push_back(key);
        }
    }

    // (2) frame indices exactly 1..T.
    if (scan.frames.size() != expected_updates) {
        frame_fail = "expected " + std::to_string(expected_updates) + " frames, got " +
                     std::to_string(scan.frames.size());
    } else {
        for (std::size_t i = 0; i < scan.frames.size(); ++i) {
            if (scan.frames[i].t != static_cast<std::int64_t>(i + 1)) {
                frame_fail = "line " + std::to_string(scan.frames[i].line) + ": frame index " +
                             std::to_string(scan.frames[i].t) + " where " + std::to_string(i + 1) +
                             " was expected";
                break;
            }
        }
    }

    // (3) ids resolve and attributes are whitelisted.
    for (const wire::Frame& frame : scan.frames) {
        if (topology_fail) break;
        for (const wire::Entry& entry : frame.entries) {
            if (!s0.id_index.count(entry.id)) {
                topology_fail = "line " + std::to_string(entry.line) + ": id " +
                                std::to_string(entry.id) + " does not exist in the base document";
                break;
            }
            if (!is_diffable_attr(entry.attr)) {
                topology_fail = "line " + std::to_string(entry.line) + ": attribute " + entry.attr +
                                " is not diffable";
                break;
            }
        }
    }

    if (opts.strict_render && !syntax_fail && !frame_fail && !topology_fail && !scan.frames.empty()) {
        ParseStreamResult parsed = parse_stream(stream_text, s0, expected_updates);
        if (parsed.ok()) {
            UpdateSequence first_frame_only = *parsed.sequence;
            first_frame_only.deltas.resize(1);
            try {
                render_sequence(first_frame_only, 64, 64);
            } catch (const Error& e) {
                syntax_fail = std::string("not renderable: ") + e.what();
            }
        }
    }

    verdict.syntax_ok = !syntax_fail;
    verdict.frame_count_ok = !frame_fail;
    verdict.id_topology_ok = !topology_fail;
    verdict.reward = (verdict.syntax_ok && verdict.frame_count_ok && verdict.id_topology_ok) ? 1 : -1;
    if (syntax_fail)
        verdict.first_failure = "syntax: " + *syntax_fail;
    else if (frame_fail)
        verdict.first_failure = "frame_count: " + *frame_fail;
    else if (topology_fail)
        verdict.first_failure = "id_topology: " + *topology_fail;
    return verdict;
}

CotReport check_cot(std::string_view cot_text, const SvgDocument& s0) {
    static const std::regex kIdPattern(R"re(\bid(?:\s*[=:]\s*|\s+)"?(\d+)"?)re",
                                       std::regex::ECMAScript | std::regex::icase);
    CotReport report;

    const std::string text(cot_text);
    auto begin = std::sregex_iterator(text.begin(), text.end(), kIdPattern);
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
        const std::string digits = (*it)[1].str();
        if (digits.size() > 18) continue;
        std::int64_t id = std::stoll(digits);  // normalizes leading zeros
        if (std::find(report.referenced_ids.begin(), report.referenced_ids.end(), id) ==
            report.referenced_ids.end())
            report.referenced_ids.push_back(id);
    }
    for (std::int64_t id : report.referenced_ids)
        if (!s0.id_index.count(id)) report.unknown_ids.push_back(id);

    report.accepted = !report.referenced_ids.empty() && report.unknown_ids.empty();
    return report;
}

}  // namespace svgdelta
