#include "svgdelta/ssu.hpp"

#include <algorithm>
#include <charconv>

#include "svgdelta/errors.hpp"

namespace svgdelta {

namespace {

// Canonicality requirements the codec relies on: dynamic nodes carry ids,
// attributes are sorted, values are in canonical form.
void require_canonical(const SvgDocument& doc, std::size_t frame_index) {
    auto recurse = [&](auto&& self, const SvgNode& node, NodePath& path) -> void {
        if (is_dynamic_tag(node.tag) && !node.id)
            throw NonCanonicalInputError("frame " + std::to_string(frame_index) + ": dynamic node <" +
                                         node.tag + "> at " + node_path_to_string(path) +
                                         " has no persistent id");
        if (!is_dynamic_tag(node.tag) && node.id)
            throw NonCanonicalInputError("frame " + std::to_string(frame_index) + ": static node <" +
                                         node.tag + "> at " + node_path_to_string(path) +
                                         " carries a persistent id");
        if (!std::is_sorted(node.attributes.begin(), node.attributes.end(),
                            [](const auto& a, const auto& b) { return a.first < b.first; }))
            throw NonCanonicalInputError("frame " + std::to_string(frame_index) + ": attributes of <" +
                                         node.tag + "> at " + node_path_to_string(path) +
                                         " are not in canonical order");
        if (is_dynamic_tag(node.tag) || node.tag == "svg") {
            for (const auto& [name, value] : node.attributes) {
                if (canonical_attr_value(node.tag, name, value) != value)
                    throw NonCanonicalInputError("frame " + std::to_string(frame_index) + ": attribute " +
                                                 name + "=\"" + value + "\" of <" + node.tag + "> at " +
                                                 node_path_to_string(path) + " is not in canonical form");
            }
        }
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            path.push_back(i);
            self(self, node.children[i], path);
            path.pop_back();
        }
    };
    NodePath path;
    recurse(recurse, doc.root, path);
}

void diff_nodes(const SvgNode& prev, const SvgNode& next, NodePath& path,
                std::vector<AttrUpdate>& out) {
    if (prev.id) {
        // Dynamic node: diff the whitelisted attributes.
        for (const auto& [name, old_value] : prev.attributes) {
            const std::string* new_value = next.find_attr(name);
            if (new_value && *new_value == old_value) continue;
            if (!is_diffable_attr(name))
                throw UndiffableAttrError("attribute " + name + " of node id " + std::to_string(*prev.id) +
                                          " changed but is not diffable");
            if (!new_value)
                out.push_back({*prev.id, name, std::string(kRemovalSentinel)});
            else
                out.push_back({*prev.id, name, *new_value});
        }
        for (const auto& [name, new_value] : next.attributes) {
            if (prev.find_attr(name)) continue;  // handled above
            if (!is_diffable_attr(name))
                throw UndiffableAttrError("attribute " + name + " of node id " + std::to_string(*prev.id) +
                                          " was added but is not diffable");
            out.push_back({*prev.id, name, new_value});
        }
    } else if (prev.attributes != next.attributes) {
        throw UndiffableAttrError("static node <" + prev.tag + "> at " + node_path_to_string(path) +
                                  " changed between frames");
    }
    for (std::size_t i = 0; i < prev.children.size(); ++i) {
        path.push_back(i);
        diff_nodes(prev.children[i], next.children[i], path, out);
        path.pop_back();
    }
}

}  // namespace

UpdateSequence extract(const FrameSequence& seq) {
    if (seq.frames.empty()) throw NonCanonicalInputError("frame sequence is empty");
    if (seq.update_count() > kMaxSequenceUpdates)
        throw NonCanonicalInputError("sequence has " + std::to_string(seq.update_count()) +
                                     " updates, maximum is " + std::to_string(kMaxSequenceUpdates));

    for (std::size_t t = 1; t < seq.frames.size(); ++t) {
        auto report = isomorphism_check(seq.frames[t - 1], seq.frames[t]);
        if (!report.isomorphic)
            throw NotIsomorphicError("frames " + std::to_string(t - 1) + " and " + std::to_string(t) +
                                     " diverge at " + node_path_to_string(report.divergence) + ": " +
                                     report.reason);
    }
    for (std::size_t t = 0; t < seq.frames.size(); ++t) require_canonical(seq.frames[t], t);

    UpdateSequence u;
    u.initial = seq.frames[0];
    u.fps = seq.fps;
    for (std::size_t t = 1; t < seq.frames.size(); ++t) {
        UpdateSet delta;
        delta.t = t;
        NodePath path;
        diff_nodes(seq.frames[t - 1].root, seq.frames[t].root, path, delta.updates);
        std::sort(delta.updates.begin(), delta.updates.end(), [](const AttrUpdate& a, const AttrUpdate& b) {
            return a.id != b.id ? a.id < b.id : a.attr < b.attr;
        });
        u.deltas.push_back(std::move(delta));
    }
    return u;
}

FrameSequence apply(const UpdateSequence& u) {
    for (std::size_t i = 0; i < u.deltas.size(); ++i) {
        if (u.deltas[i].t != i + 1)
            throw FrameGapError("update sets must cover frames 1..T in order; position " +
                                std::to_string(i) + " holds frame index " + std::to_string(u.deltas[i].t));
    }

    FrameSequence seq;
    seq.fps = u.fps;
    seq.viewport_w = u.initial.viewport_w;
    seq.viewport_h = u.initial.viewport_h;
    seq.frames.push_back(u.initial);

    for (const UpdateSet& delta : u.deltas) {
        SvgDocument frame = seq.frames.back();
        for (const AttrUpdate& update : delta.updates) {
            SvgNode* node = frame.find_by_id(update.id);
            if (!node)
                throw UnknownIdError("update references id " + std::to_string(update.id) +
                                     " absent from the base document");
            if (!is_diffable_attr(update.attr))
                throw UndiffableAttrError("attribute " + update.attr + " is not diffable");
            if (update.is_removal()) {
                node->remove_attr(update.attr);
            } else {
                node->set_attr(update.attr, update.value);
                // set_attr appends new names; restore canonical order.
                std::sort(node->attributes.begin(), node->attributes.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
            }
        }
        seq.frames.push_back(std::move(frame));
    }
    return seq;
}

std::string emit_stream(const UpdateSequence& u) {
    std::string out;
    for (const UpdateSet& delta : u.deltas) {
        out += "<|time=";
        out += std::to_string(delta.t);
        out += "|>\n";
        for (const AttrUpdate& update : delta.updates) {
            out += "  <|ID=";
            out += std::to_string(update.id);
            out += "|> ";
            out += update.attr;
            out += ": ";
            out += update.value;
            out += '\n';
        }
    }
    return out;
}

std::string_view stream_failure_name(StreamFailure f) {
    switch (f) {
        case StreamFailure::Syntax: return "syntax";
        case StreamFailure::FrameCount: return "frame-count";
        case StreamFailure::UnknownId: return "unknown-id";
        case StreamFailure::UndiffableAttr: return "undiffable-attr";
    }
    return "";
}

namespace wire {

namespace {

bool parse_int(std::string_view text, std::int64_t& out) {
    if (text.empty() || text.size() > 18) return false;
    for (char c : text)
        if (c < '0' || c > '9') return false;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

ScanResult scan_stream(std::string_view text) {
    ScanResult result;
    std::size_t line_no = 0;
    std::size_t pos = 0;

    auto fail = [&](std::string msg) {
        result.ok = false;
        result.diagnostic = std::move(msg);
        result.line = line_no;
        result.frames.clear();
        return result;
    };

    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        ++line_no;
        if (eol == std::string_view::npos)
            return fail("line " + std::to_string(line_no) + ": missing trailing newline");
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;

        if (line.rfind("<|time=", 0) == 0) {
            std::string_view rest = line.substr(7);
            std::size_t close = rest.find("|>");
            if (close == std::string_view::npos || close + 2 != rest.size())
                return fail("line " + std::to_string(line_no) + ": malformed frame header");
            std::int64_t t = 0;
            if (!parse_int(rest.substr(0, close), t))
                return fail("line " + std::to_string(line_no) + ": bad frame index");
            result.frames.push_back({t, {}, line_no});
            continue;
        }

        if (line.rfind("  <|ID=", 0) == 0) {
            if (result.frames.empty())
                return fail("line " + std::to_string(line_no) + ": entry before any frame header");
            std::string_view rest = line.substr(7);
            std::size_t close = rest.find("|>");
            if (close == std::string_view::npos)
                return fail("line " + std::to_string(line_no) + ": unterminated id tag");
            std::int64_t id = 0;
            if (!parse_int(rest.substr(0, close), id))
                return fail("line " + std::to_string(line_no) + ": bad id");
            rest = rest.substr(close + 2);
            if (rest.empty() || rest[0] != ' ')
                return fail("line " + std::to_string(line_no) + ": expected space after id tag");
            rest = rest.substr(1);
            std::size_t colon = rest.find(':');
            if (colon == std::string_view::npos || colon == 0)
                return fail("line " + std::to_string(line_no) + ": expected 'attr: value'");
            std::string_view attr = rest.substr(0, colon);
            for (char c : attr)
                if (c == ' ' || c == '\t')
                    return fail("line " + std::to_string(line_no) + ": attribute name contains whitespace");
            rest = rest.substr(colon + 1);
            if (rest.empty() || rest[0] != ' ')
                return fail("line " + std::to_string(line_no) + ": expected space after ':'");
            std::string_view value = rest.substr(1);
            result.frames.back().entries.push_back(
                {id, std::string(attr), std::string(value), line_no});
            continue;
        }

        return fail("line " + std::to_string(line_no) + ": unrecognized line");
    }
    return result;
}

}  // namespace wire

ParseStreamResult parse_stream(std::string_view stream_text, const SvgDocument& s0,
                               std::size_t expected_updates, int fps) {
    ParseStreamResult result;
    auto fail = [&](StreamFailure f, std::string msg) {
        result.failure = f;
        result.diagnostic = std::move(msg);
        return result;
    };

    wire::ScanResult scan = wire::scan_stream(stream_text);
    if (!scan.ok) return fail(StreamFailure::Syntax, scan.diagnostic);

    // Frame indices must be exactly 1..T.
    if (scan.frames.size() != expected_updates)
        return fail(StreamFailure::FrameCount,
                    "expected " + std::to_string(expected_updates) + " frames, got " +
                        std::to_string(scan.frames.size()));
    for (std::size_t i = 0; i < scan.frames.size(); ++i) {
        if (scan.frames[i].t != static_cast<std::int64_t>(i + 1))
            return fail(StreamFailure::FrameCount,
                        "line " + std::to_string(scan.frames[i].line) + ": frame index " +
                            std::to_string(scan.frames[i].t) + " where " + std::to_string(i + 1) +
                            " was expected");
    }

    UpdateSequence u;
    u.initial = s0;
    u.fps = fps;
    for (const wire::Frame& frame : scan.frames) {
        UpdateSet delta;
        delta.t = static_cast<std::size_t>(frame.t);
        for (const wire::Entry& entry : frame.entries) {
            if (!s0.id_index.count(entry.id))
                return fail(StreamFailure::UnknownId,
                            "line " + std::to_string(entry.line) + ": id " + std::to_string(entry.id) +
                                " does not exist in the base document");
            if (!is_diffable_attr(entry.attr))
                return fail(StreamFailure::UndiffableAttr,
                            "line " + std::to_string(entry.line) + ": attribute " + entry.attr +
                                " is not diffable");
            delta.updates.push_back({entry.id, entry.attr, entry.value});
        }
        std::sort(delta.updates.begin(), delta.updates.end(), [](const AttrUpdate& a, const AttrUpdate& b) {
            return a.id != b.id ? a.id < b.id : a.attr < b.attr;
        });
        for (std::size_t i = 1; i < delta.updates.size(); ++i) {
            if (delta.updates[i].id == delta.updates[i - 1].id &&
                delta.updates[i].attr == delta.updates[i - 1].attr)
                return fail(StreamFailure::Syntax,
                            "frame " + std::to_string(delta.t) + ": duplicate update for id " +
                                std::to_string(delta.updates[i].id) + " attribute " + delta.updates[i].attr);
        }
        u.deltas.push_back(std::move(delta));
    }

    result.sequence = std::move(u);
    return result;
}

}  // namespace svgdelta
