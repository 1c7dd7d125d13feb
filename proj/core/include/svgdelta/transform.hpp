#pragma once

#include <string>
#include <string_view>

namespace svgdelta {

struct Vec2 {
    double x = 0;
    double y = 0;
};

inline bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

struct Rect {
    double x0 = 0;
    double y0 = 0;
    double x1 = 0;
    double y1 = 0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
};

// 2x3 affine matrix, column-major SVG convention:
//   | a c e |
//   | b d f |
struct TransformMatrix {
    double a = 1, b = 0, c = 0, d = 1, e = 0, f = 0;

    static TransformMatrix identity() { return {}; }
    static TransformMatrix translate(double tx, double ty) { return {1, 0, 0, 1, tx, ty}; }
    static TransformMatrix scale(double sx, double sy) { return {sx, 0, 0, sy, 0, 0}; }
    static TransformMatrix rotate_deg(double degrees);

    bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1 && e == 0 && f == 0; }

    Vec2 apply(Vec2 p) const {
        return {a * p.x + c * p.y + e, b * p.x + d * p.y + f};
    }
};

// Matrix product lhs * rhs: applying the result is applying rhs first.
TransformMatrix multiply(const TransformMatrix& lhs, const TransformMatrix& rhs);

inline bool operator==(const TransformMatrix& l, const TransformMatrix& r) {
    return l.a == r.a && l.b == r.b && l.c == r.c && l.d == r.d && l.e == r.e && l.f == r.f;
}

// Parses a transform attribute value: a whitespace/comma separated list of
// matrix(...), translate(...), scale(...) and rotate(...) terms, composed
// left to right into a single matrix. Throws TransformSyntaxError.
TransformMatrix parse_transform(std::string_view text);

// Canonical value form: "matrix(a, b, c, d, e, f)" with format_number entries.
std::string serialize_transform(const TransformMatrix& m);

}  // namespace svgdelta
