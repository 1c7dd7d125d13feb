#include "svgdelta/transform.hpp"

#include <cctype>
#include <cmath>
#include <vector>

#include "svgdelta/errors.hpp"
#include "svgdelta/numeric.hpp"

namespace svgdelta {

TransformMatrix TransformMatrix::rotate_deg(double degrees) {
    const double rad = degrees * (M_PI / 180.0);
    const double s = std::sin(rad);
    const double c = std::cos(rad);
    return {c, s, -s, c, 0, 0};
}

TransformMatrix multiply(const TransformMatrix& l, const TransformMatrix& r) {
    return {
        l.a * r.a + l.c * r.b,
        l.b * r.a + l.d * r.b,
        l.a * r.c + l.c * r.d,
        l.b * r.c + l.d * r.d,
        l.a * r.e + l.c * r.f + l.e,
        l.b * r.e + l.d * r.f + l.f,
    };
}

namespace {

struct Scanner {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ','))
            ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    std::string_view ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && (std::isalpha(static_cast<unsigned char>(text[pos]))))
            ++pos;
        return text.substr(start, pos - start);
    }
    void expect(char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c)
            throw TransformSyntaxError("expected '" + std::string(1, c) + "' in transform \"" + std::string(text) + "\"");
        ++pos;
    }
    std::vector<double> args() {
        expect('(');
        std::size_t start = pos;
        while (pos < text.size() && text[pos] != ')') ++pos;
        if (pos >= text.size())
            throw TransformSyntaxError("unterminated '(' in transform \"" + std::string(text) + "\"");
        auto nums = parse_number_list(text.substr(start, pos - start));
        ++pos;  // ')'
        if (!nums)
            throw TransformSyntaxError("bad number in transform \"" + std::string(text) + "\"");
        return *nums;
    }
};

}  // namespace

TransformMatrix parse_transform(std::string_view text) {
    Scanner s{text};
    TransformMatrix result;
    bool saw_term = false;
    while (!s.done()) {
        std::string_view name = s.ident();
        std::vector<double> v = s.args();
        TransformMatrix term;
        if (name == "matrix") {
            if (v.size() != 6) throw TransformSyntaxError("matrix() takes 6 numbers, got " + std::to_string(v.size()));
            term = {v[0], v[1], v[2], v[3], v[4], v[5]};
        } else if (name == "translate") {
            if (v.size() != 1 && v.size() != 2)
                throw TransformSyntaxError("translate() takes 1 or 2 numbers, got " + std::to_string(v.size()));
            term = TransformMatrix::translate(v[0], v.size() == 2 ? v[1] : 0.0);
        } else if (name == "scale") {
            if (v.size() != 1 && v.size() != 2)
                throw TransformSyntaxError("scale() takes 1 or 2 numbers, got " + std::to_string(v.size()));
            term = TransformMatrix::scale(v[0], v.size() == 2 ? v[1] : v[0]);
        } else if (name == "rotate") {
            if (v.size() == 1) {
                term = TransformMatrix::rotate_deg(v[0]);
            } else if (v.size() == 3) {
                term = multiply(TransformMatrix::translate(v[1], v[2]),
                                multiply(TransformMatrix::rotate_deg(v[0]),
                                         TransformMatrix::translate(-v[1], -v[2])));
            } else {
                throw TransformSyntaxError("rotate() takes 1 or 3 numbers, got " + std::to_string(v.size()));
            }
        } else {
            throw TransformSyntaxError("unknown transform \"" + std::string(name) + "\"");
        }
        result = multiply(result, term);
        saw_term = true;
    }
    if (!saw_term) throw TransformSyntaxError("empty transform value");
    return result;
}

std::string serialize_transform(const TransformMatrix& m) {
    return "matrix(" + format_number_list({m.a, m.b, m.c, m.d, m.e, m.f}, ", ") + ")";
}

}  // namespace svgdelta
