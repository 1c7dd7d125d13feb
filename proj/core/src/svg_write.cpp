#include <string>

#include "svgdelta/svg_model.hpp"

namespace svgdelta {

namespace {

void escape_into(std::string& out, const std::string& value) {
    for (char c : value) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
}

void write_node(std::string& out, const SvgNode& node, int depth) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += '<';
    out += node.tag;
    if (node.id) {
        out += " id=\"";
        out += std::to_string(*node.id);
        out += '"';
    }
    for (const auto& [name, value] : node.attributes) {
        out += ' ';
        out += name;
        out += "=\"";
        escape_into(out, value);
        out += '"';
    }
    if (node.children.empty()) {
        out += "/>\n";
        return;
    }
    out += ">\n";
    for (const SvgNode& child : node.children) write_node(out, child, depth + 1);
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += "</";
    out += node.tag;
    out += ">\n";
}

}  // namespace

std::string serialize_svg(const SvgDocument& doc) {
    std::string out;
    write_node(out, doc.root, 0);
    return out;
}

}  // namespace svgdelta
