#include "svgdelta/svg_model.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "svgdelta/errors.hpp"
#include "svgdelta/numeric.hpp"
#include "svgdelta/path_data.hpp"
#include "svgdelta/transform.hpp"
#include "viewport_detail.hpp"

namespace svgdelta {

const std::string* SvgNode::find_attr(std::string_view name) const {
    for (const auto& [k, v] : attributes)
        if (k == name) return &v;
    return nullptr;
}

void SvgNode::set_attr(std::string_view name, std::string value) {
    for (auto& [k, v] : attributes) {
        if (k == name) {
            v = std::move(value);
            return;
        }
    }
    attributes.emplace_back(std::string(name), std::move(value));
}

bool SvgNode::remove_attr(std::string_view name) {
    for (auto it = attributes.begin(); it != attributes.end(); ++it) {
        if (it->first == name) {
            attributes.erase(it);
            return true;
        }
    }
    return false;
}

bool operator==(const SvgNode& a, const SvgNode& b) {
    return a.tag == b.tag && a.id == b.id && a.attributes == b.attributes && a.children == b.children;
}

bool trees_equal(const SvgNode& a, const SvgNode& b) { return a == b; }

bool operator==(const SvgDocument& a, const SvgDocument& b) {
    return a.viewport_w == b.viewport_w && a.viewport_h == b.viewport_h && a.root == b.root;
}

std::string node_path_to_string(const NodePath& path) {
    if (path.empty()) return "/";
    std::string out;
    for (std::size_t idx : path) {
        out += '/';
        out += std::to_string(idx);
    }
    return out;
}

namespace {

template <typename Node, typename Fn>
void walk(Node& node, NodePath& path, Fn&& fn) {
    fn(node, path);
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        path.push_back(i);
        walk(node.children[i], path, fn);
        path.pop_back();
    }
}

}  // namespace

void SvgDocument::rebuild_id_index() {
    id_index.clear();
    NodePath path;
    walk(root, path, [&](const SvgNode& node, const NodePath& p) {
        if (!node.id) return;
        auto [it, inserted] = id_index.emplace(*node.id, p);
        if (!inserted)
            throw DuplicateIdError("id " + std::to_string(*node.id) + " appears at " +
                                   node_path_to_string(it->second) + " and " + node_path_to_string(p));
    });
}

const SvgNode* SvgDocument::find_by_id(std::int64_t id) const {
    auto it = id_index.find(id);
    if (it == id_index.end()) return nullptr;
    const SvgNode* node = &root;
    for (std::size_t idx : it->second) {
        if (idx >= node->children.size()) return nullptr;
        node = &node->children[idx];
    }
    return node;
}

SvgNode* SvgDocument::find_by_id(std::int64_t id) {
    return const_cast<SvgNode*>(static_cast<const SvgDocument*>(this)->find_by_id(id));
}

bool is_dynamic_tag(std::string_view tag) {
    static constexpr std::array<std::string_view, 10> kTags = {
        "path", "rect", "circle", "ellipse", "line",
        "polyline", "polygon", "g", "feColorMatrix", "feMorphology",
    };
    return std::find(kTags.begin(), kTags.end(), tag) != kTags.end();
}

bool is_diffable_attr(std::string_view attr) {
    static constexpr std::array<std::string_view, 10> kAttrs = {
        "d", "transform", "fill", "stroke", "opacity",
        "fill-opacity", "stroke-opacity", "stroke-width",
        // filter primitive value attributes
        "values", "radius",
    };
    return std::find(kAttrs.begin(), kAttrs.end(), attr) != kAttrs.end();
}

namespace {

bool is_single_number_attr(std::string_view attr) {
    static constexpr std::array<std::string_view, 17> kAttrs = {
        "opacity", "fill-opacity", "stroke-opacity", "stroke-width",
        "width", "height", "x", "y", "cx", "cy", "r", "rx", "ry",
        "x1", "y1", "x2", "y2",
    };
    return std::find(kAttrs.begin(), kAttrs.end(), attr) != kAttrs.end();
}

std::string canonical_color(std::string_view value) {
    std::string v;
    for (char c : value)
        if (!std::isspace(static_cast<unsigned char>(c)))
            v += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (v.size() == 4 && v[0] == '#') {
        std::string expanded = "#";
        for (int i = 1; i <= 3; ++i) {
            expanded += v[i];
            expanded += v[i];
        }
        return expanded;
    }
    return v;
}

}  // namespace

std::string canonical_attr_value(std::string_view tag, std::string_view attr, std::string_view value) {
    if (attr == "d" && tag == "path")
        return serialize_path(to_relative(parse_path(value)));
    if (attr == "transform")
        return serialize_transform(parse_transform(value));
    if (attr == "fill" || attr == "stroke")
        return canonical_color(value);
    if (is_single_number_attr(attr)) {
        auto n = parse_number(value);
        return n ? format_number(*n) : std::string(value);
    }
    if (attr == "values" || attr == "radius") {
        auto nums = parse_number_list(value);
        return nums ? format_number_list(*nums, " ") : std::string(value);
    }
    if (attr == "points") {
        auto nums = parse_number_list(value);
        if (nums && nums->size() % 2 == 0 && !nums->empty()) {
            std::string out;
            for (std::size_t i = 0; i < nums->size(); i += 2) {
                if (i) out += ' ';
                out += format_number((*nums)[i]);
                out += ',';
                out += format_number((*nums)[i + 1]);
            }
            return out;
        }
        return std::string(value);
    }
    return std::string(value);
}

SvgDocument canonicalize(const SvgDocument& doc, const CanonicalizeOptions& opts) {
    if (doc.root.tag != "svg") throw NonSvgRootError("document root is <" + doc.root.tag + ">");

    SvgDocument out;
    out.root = doc.root;

    auto vp = detail::resolve_viewport(out.root);
    if (!vp.resolved || vp.w <= 0 || vp.h <= 0)
        throw DegenerateViewportError("viewport is missing or has zero area");
    if (opts.target_w <= 0 || opts.target_h <= 0)
        throw DegenerateViewportError("target viewport has zero area");

    // Uniform scale into the target viewport, folded into a top-level group.
    const double scale = std::min(opts.target_w / vp.w, opts.target_h / vp.h);
    TransformMatrix base = multiply(TransformMatrix::scale(scale, scale),
                                    TransformMatrix::translate(-vp.min_x, -vp.min_y));
    if (!base.is_identity() && !out.root.children.empty()) {
        SvgNode wrapper;
        wrapper.tag = "g";
        wrapper.set_attr("transform", serialize_transform(base));
        wrapper.children = std::move(out.root.children);
        out.root.children.clear();
        out.root.children.push_back(std::move(wrapper));
    }
    out.root.remove_attr("viewBox");
    out.root.set_attr("width", format_number(opts.target_w));
    out.root.set_attr("height", format_number(opts.target_h));
    out.viewport_w = opts.target_w;
    out.viewport_h = opts.target_h;

    // Persistent ids: dynamic nodes keep an existing id, others lose theirs.
    std::vector<SvgNode*> dynamic_nodes;
    std::vector<bool> used;
    NodePath path;
    walk(out.root, path, [&](SvgNode& node, const NodePath&) {
        if (is_dynamic_tag(node.tag)) {
            dynamic_nodes.push_back(&node);
            if (node.id && *node.id >= 0) {
                if (static_cast<std::size_t>(*node.id) >= used.size()) used.resize(*node.id + 1, false);
                used[*node.id] = true;
            }
        } else {
            node.id.reset();
        }
    });
    std::int64_t next_id = 0;
    for (SvgNode* node : dynamic_nodes) {
        if (node->id) continue;
        while (static_cast<std::size_t>(next_id) < used.size() && used[next_id]) ++next_id;
        node->id = next_id++;
    }

    // Attribute values and ordering.
    walk(out.root, path, [&](SvgNode& node, const NodePath&) {
        if (is_dynamic_tag(node.tag) || node.tag == "svg") {
            for (auto& [name, value] : node.attributes)
                value = canonical_attr_value(node.tag, name, value);
        }
        std::sort(node.attributes.begin(), node.attributes.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    });

    out.rebuild_id_index();
    return out;
}

IsomorphismReport isomorphism_check(const SvgDocument& a, const SvgDocument& b) {
    IsomorphismReport report;
    NodePath path;

    auto recurse = [&](auto&& self, const SvgNode& x, const SvgNode& y) -> bool {
        if (x.tag != y.tag) {
            report = {false, path, "tag <" + x.tag + "> vs <" + y.tag + ">"};
            return false;
        }
        if (x.id != y.id) {
            auto show = [](const std::optional<std::int64_t>& id) {
                return id ? std::to_string(*id) : std::string("none");
            };
            report = {false, path, "id " + show(x.id) + " vs " + show(y.id)};
            return false;
        }
        if (x.children.size() != y.children.size()) {
            report = {false, path,
                      "child count " + std::to_string(x.children.size()) + " vs " +
                          std::to_string(y.children.size())};
            return false;
        }
        for (std::size_t i = 0; i < x.children.size(); ++i) {
            path.push_back(i);
            if (!self(self, x.children[i], y.children[i])) return false;
            path.pop_back();
        }
        return true;
    };

    recurse(recurse, a.root, b.root);
    return report;
}

}  // namespace svgdelta
