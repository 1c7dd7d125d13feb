#include <cctype>
#include <cstdint>
#include <string>

#include "svgdelta/errors.hpp"
#include "svgdelta/numeric.hpp"
#include "svgdelta/svg_model.hpp"
#include "viewport_detail.hpp"

namespace svgdelta {

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
}
bool is_name_char(char c) {
    return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.';
}

// Minimal XML reader for the SVG subset: elements, attributes, comments,
// character references. Text content other than whitespace is rejected.
struct XmlParser {
    std::string_view text;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < at && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw XmlSyntaxError(msg, line, col);
    }
    [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos); }

    bool eof() const { return pos >= text.size(); }
    char peek() const { return pos < text.size() ? text[pos] : '\0'; }
    bool starts_with(std::string_view s) const { return text.substr(pos, s.size()) == s; }

    void skip_ws() {
        while (!eof() && is_ws(text[pos])) ++pos;
    }

    void skip_until(std::string_view terminator, const std::string& what) {
        std::size_t found = text.find(terminator, pos);
        if (found == std::string_view::npos) fail("unterminated " + what);
        pos = found + terminator.size();
    }

    // Skips comments, processing instructions and the doctype declaration.
    // Returns false when the next token is not one of those.
    bool skip_misc() {
        if (starts_with("<!--")) {
            pos += 4;
            skip_until("-->", "comment");
            return true;
        }
        if (starts_with("<?")) {
            pos += 2;
            skip_until("?>", "processing instruction");
            return true;
        }
        if (starts_with("<!DOCTYPE") || starts_with("<!doctype")) {
            std::size_t start = pos;
            pos += 9;
            while (!eof() && text[pos] != '>') {
                if (text[pos] == '[') fail("internal DTD subset not supported", start);
                ++pos;
            }
            if (eof()) fail("unterminated doctype", start);
            ++pos;
            return true;
        }
        return false;
    }

    std::string name() {
        if (eof() || !is_name_start(peek())) fail("expected a name");
        std::size_t start = pos;
        while (!eof() && is_name_char(text[pos])) ++pos;
        return std::string(text.substr(start, pos - start));
    }

    std::string decode_entities(std::string_view raw, std::size_t raw_offset) {
        std::string out;
        out.reserve(raw.size());
        for (std::size_t i = 0; i < raw.size();) {
            if (raw[i] != '&') {
                out += raw[i++];
                continue;
            }
            std::size_t end = raw.find(';', i);
            if (end == std::string_view::npos) fail("unterminated entity reference", raw_offset + i);
            std::string_view ent = raw.substr(i + 1, end - i - 1);
            if (ent == "amp") out += '&';
            else if (ent == "lt") out += '<';
            else if (ent == "gt") out += '>';
            else if (ent == "quot") out += '"';
            else if (ent == "apos") out += '\'';
            else if (!ent.empty() && ent[0] == '#') {
                long code = 0;
                bool ok = ent.size() > 1;
                if (ent.size() > 2 && (ent[1] == 'x' || ent[1] == 'X')) {
                    for (std::size_t k = 2; k < ent.size() && ok; ++k) {
                        char c = ent[k];
                        int digit;
                        if (c >= '0' && c <= '9') digit = c - '0';
                        else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
                        else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
                        else { ok = false; break; }
                        code = code * 16 + digit;
                    }
                } else {
                    for (std::size_t k = 1; k < ent.size() && ok; ++k) {
                        if (ent[k] < '0' || ent[k] > '9') { ok = false; break; }
                        code = code * 10 + (ent[k] - '0');
                    }
                }
                if (!ok || code <= 0 || code > 0x10FFFF) fail("bad character reference", raw_offset + i);
                // Encode the code point as UTF-8.
                if (code < 0x80) {
                    out += static_cast<char>(code);
                } else if (code < 0x800) {
                    out += static_cast<char>(0xC0 | (code >> 6));
                    out += static_cast<char>(0x80 | (code & 0x3F));
                } else if (code < 0x10000) {
                    out += static_cast<char>(0xE0 | (code >> 12));
                    out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
                    out += static_cast<char>(0x80 | (code & 0x3F));
                } else {
                    out += static_cast<char>(0xF0 | (code >> 18));
                    out += static_cast<char>(0x80 | ((code >> 12) & 0x3F));
                    out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
                    out += static_cast<char>(0x80 | (code & 0x3F));
                }
            } else {
                fail("unknown entity &" + std::string(ent) + ";", raw_offset + i);
            }
            i = end + 1;
        }
        return out;
    }

    SvgNode element() {
        if (peek() != '<') fail("expected '<'");
        ++pos;
        SvgNode node;
        node.tag = name();

        while (true) {
            skip_ws();
            if (eof()) fail("unterminated start tag for <" + node.tag + ">");
            if (peek() == '/') {
                ++pos;
                if (peek() != '>') fail("expected '>' after '/'");
                ++pos;
                return node;  // self-closing
            }
            if (peek() == '>') {
                ++pos;
                break;
            }
            std::size_t attr_at = pos;
            std::string attr_name = name();
            skip_ws();
            if (peek() != '=') fail("expected '=' after attribute name");
            ++pos;
            skip_ws();
            char quote = peek();
            if (quote != '"' && quote != '\'') fail("expected quoted attribute value");
            ++pos;
            std::size_t vstart = pos;
            while (!eof() && text[pos] != quote) {
                if (text[pos] == '<') fail("'<' in attribute value");
                ++pos;
            }
            if (eof()) fail("unterminated attribute value", vstart);
            std::string value = decode_entities(text.substr(vstart, pos - vstart), vstart);
            ++pos;

            if (attr_name == "id") {
                // A non-negative decimal integer is a persistent id; anything
                // else stays an ordinary attribute.
                bool all_digits = !value.empty();
                for (char c : value)
                    if (!std::isdigit(static_cast<unsigned char>(c))) all_digits = false;
                if (all_digits && value.size() <= 18) {
                    if (node.id) fail("duplicate id attribute", attr_at);
                    node.id = std::stoll(value);
                    continue;
                }
            }
            if (node.find_attr(attr_name)) fail("duplicate attribute " + attr_name, attr_at);
            node.attributes.emplace_back(std::move(attr_name), std::move(value));
        }

        // Content: children and whitespace until the matching end tag.
        while (true) {
            std::size_t tstart = pos;
            while (!eof() && text[pos] != '<') {
                if (!is_ws(text[pos]))
                    fail("text content is not supported inside <" + node.tag + ">", pos);
                ++pos;
            }
            (void)tstart;
            if (eof()) fail("missing end tag for <" + node.tag + ">");
            if (starts_with("<!--") || starts_with("<?")) {
                if (!skip_misc()) fail("bad markup");
                continue;
            }
            if (starts_with("<![CDATA[")) fail("CDATA sections are not supported");
            if (starts_with("</")) {
                pos += 2;
                std::string end_name = name();
                if (end_name != node.tag)
                    fail("mismatched end tag </" + end_name + "> for <" + node.tag + ">");
                skip_ws();
                if (peek() != '>') fail("expected '>' in end tag");
                ++pos;
                return node;
            }
            node.children.push_back(element());
        }
    }
};

// Reads "123" or "123px"; other units are reported through `bad_unit`.
std::optional<double> parse_px_length(const std::string* value, bool& bad_unit) {
    if (!value) return std::nullopt;
    std::string_view v = *value;
    while (!v.empty() && is_ws(v.back())) v.remove_suffix(1);
    while (!v.empty() && is_ws(v.front())) v.remove_prefix(1);
    if (v.size() > 2 && v.substr(v.size() - 2) == "px") v = v.substr(0, v.size() - 2);
    auto n = parse_number(v);
    if (!n) {
        bad_unit = true;
        return std::nullopt;
    }
    return n;
}

}  // namespace

namespace detail {

ViewportInfo resolve_viewport(const SvgNode& root) {
    ViewportInfo info;
    bool bad_unit = false;

    if (const std::string* vb = root.find_attr("viewBox")) {
        auto nums = parse_number_list(*vb);
        if (!nums || nums->size() != 4)
            throw UnsupportedUnitError("viewBox must hold 4 numbers, got \"" + *vb + "\"");
        info.min_x = (*nums)[0];
        info.min_y = (*nums)[1];
        info.w = (*nums)[2];
        info.h = (*nums)[3];
        info.resolved = true;
        return info;
    }

    auto w = parse_px_length(root.find_attr("width"), bad_unit);
    auto h = parse_px_length(root.find_attr("height"), bad_unit);
    if (bad_unit)
        throw UnsupportedUnitError("width/height must be px lengths");
    if (w && h) {
        info.w = *w;
        info.h = *h;
        info.resolved = true;
    }
    return info;
}

}  // namespace detail

SvgDocument parse_svg(std::string_view text) {
    XmlParser parser{text};

    parser.skip_ws();
    while (!parser.eof() && parser.skip_misc()) parser.skip_ws();
    if (parser.eof()) parser.fail("no root element");

    SvgDocument doc;
    doc.root = parser.element();

    parser.skip_ws();
    while (!parser.eof() && parser.skip_misc()) parser.skip_ws();
    if (!parser.eof()) parser.fail("trailing content after root element");

    if (doc.root.tag != "svg")
        throw NonSvgRootError("root element is <" + doc.root.tag + ">, expected <svg>");

    try {
        auto vp = detail::resolve_viewport(doc.root);
        doc.viewport_w = vp.w;
        doc.viewport_h = vp.h;
    } catch (const UnsupportedUnitError&) {
        // Tolerated at parse time; canonicalize() reports it.
    }

    doc.rebuild_id_index();
    return doc;
}

}  // namespace svgdelta
