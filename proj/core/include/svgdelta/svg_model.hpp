#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace svgdelta {

// One element of the document tree. Attribute order is preserved as parsed;
// canonicalization sorts it lexicographically. The persistent identifier
// (the integer `id` attribute) is kept out of the attribute list.
struct SvgNode {
    std::string tag;
    std::optional<std::int64_t> id;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<SvgNode> children;

    const std::string* find_attr(std::string_view name) const;
    void set_attr(std::string_view name, std::string value);
    bool remove_attr(std::string_view name);
};

bool operator==(const SvgNode& a, const SvgNode& b);

// Child-index path from the root, e.g. {1, 0} = second child's first child.
using NodePath = std::vector<std::size_t>;

std::string node_path_to_string(const NodePath& path);

struct SvgDocument {
    SvgNode root;          // tag == "svg"
    double viewport_w = 0; // px
    double viewport_h = 0; // px
    std::map<std::int64_t, NodePath> id_index;

    void rebuild_id_index();  // throws DuplicateIdError
    const SvgNode* find_by_id(std::int64_t id) const;
    SvgNode* find_by_id(std::int64_t id);
};

bool operator==(const SvgDocument& a, const SvgDocument& b);

struct FrameSequence {
    std::vector<SvgDocument> frames;  // length T+1, frames[0] is the base document
    int fps = 12;
    double viewport_w = 0;
    double viewport_h = 0;

    std::size_t update_count() const { return frames.empty() ? 0 : frames.size() - 1; }
};

// Maximum number of updates (T) accepted in a sequence.
inline constexpr std::size_t kMaxSequenceUpdates = 24;

// Tags whose nodes participate in animation and receive persistent ids.
bool is_dynamic_tag(std::string_view tag);

// Attributes eligible for sparse updates.
bool is_diffable_attr(std::string_view attr);

// Parses an SVG document from XML text. Comments are dropped, standard and
// numeric character references are resolved, unknown tags are kept as opaque
// static nodes. Throws XmlSyntaxError / DuplicateIdError / NonSvgRootError.
SvgDocument parse_svg(std::string_view text);

// Deterministic serialization: 2-space indentation, LF newlines, id emitted
// first, remaining attributes in stored order, trailing newline.
std::string serialize_svg(const SvgDocument& doc);

struct CanonicalizeOptions {
    double target_w = 500;
    double target_h = 500;
};

// Normalizes a document: viewport scaled to the target via a transform
// folded into a top-level group, path data rewritten relative, persistent
// ids assigned to dynamic nodes in pre-order, attributes sorted, numeric
// values reformatted. Idempotent. Throws UnsupportedUnitError /
// DegenerateViewportError.
SvgDocument canonicalize(const SvgDocument& doc, const CanonicalizeOptions& opts = {});

struct IsomorphismReport {
    bool isomorphic = true;
    NodePath divergence;      // first divergent node, when not isomorphic
    std::string reason;
};

// True iff both documents share the same tag tree, child counts and id
// assignment node-for-node. Attribute values are not compared.
IsomorphismReport isomorphism_check(const SvgDocument& a, const SvgDocument& b);

// Structural equality helper used by round-trip tests: tags, ids, attribute
// lists (order-sensitive) and children all equal.
bool trees_equal(const SvgNode& a, const SvgNode& b);

// Canonical value formatting for one attribute (shared by canonicalize and
// the corpus generator): paths through the path grammar, transforms through
// the transform grammar, numbers and number lists through format_number,
// colors lowercased with #rgb expanded. Unknown attributes pass through.
std::string canonical_attr_value(std::string_view tag, std::string_view attr, std::string_view value);

}  // namespace svgdelta
