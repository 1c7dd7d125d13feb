#include "svgdelta/path_data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>

#include "svgdelta/errors.hpp"
#include "svgdelta/numeric.hpp"

namespace svgdelta {

std::size_t path_op_arity(PathOp op) {
    switch (op) {
        case PathOp::Move:
        case PathOp::Line:
        case PathOp::SmoothQuad: return 2;
        case PathOp::HLine:
        case PathOp::VLine: return 1;
        case PathOp::Cubic: return 6;
        case PathOp::SmoothCubic:
        case PathOp::Quad: return 4;
        case PathOp::Close: return 0;
    }
    return 0;
}

namespace {

bool is_path_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool starts_number(char c) { return is_digit(c) || c == '.' || c == '+' || c == '-'; }

struct PathScanner {
    std::string_view d;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < d.size() && is_path_space(d[pos])) ++pos;
    }
    void skip_seps() {
        skip_space();
        if (pos < d.size() && d[pos] == ',') {
            ++pos;
            skip_space();
        }
    }
    bool at_number() {
        return pos < d.size() && starts_number(d[pos]);
    }

    // SVG number grammar: sign? (digits '.'? digits* | '.' digits+) exp?
    double number() {
        skip_seps();
        std::size_t start = pos;
        std::size_t j = pos;
        if (j < d.size() && (d[j] == '+' || d[j] == '-')) ++j;
        bool any = false;
        while (j < d.size() && is_digit(d[j])) { ++j; any = true; }
        if (j < d.size() && d[j] == '.') {
            ++j;
            while (j < d.size() && is_digit(d[j])) { ++j; any = true; }
        }
        if (!any) throw PathSyntaxError("expected number", start);
        if (j < d.size() && (d[j] == 'e' || d[j] == 'E')) {
            std::size_t k = j + 1;
            if (k < d.size() && (d[k] == '+' || d[k] == '-')) ++k;
            if (k < d.size() && is_digit(d[k])) {
                j = k;
                while (j < d.size() && is_digit(d[j])) ++j;
            }
        }
        char buf[64];
        std::size_t len = std::min<std::size_t>(j - start, sizeof(buf) - 1);
        std::memcpy(buf, d.data() + start, len);
        buf[len] = '\0';
        pos = j;
        return std::strtod(buf, nullptr);
    }

    // Arc flags are single '0'/'1' characters, possibly unseparated.
    bool flag() {
        skip_seps();
        if (pos >= d.size() || (d[pos] != '0' && d[pos] != '1'))
            throw PathSyntaxError("expected arc flag 0 or 1", pos);
        return d[pos++] == '1';
    }
};

Vec2 reflect(Vec2 pivot, Vec2 p) { return {2 * pivot.x - p.x, 2 * pivot.y - p.y}; }

// Endpoint-parameterized elliptical arc to cubic segments (max 90 deg each).
// Absolute coordinates in, absolute Cubic commands out.
void arc_to_cubics(Vec2 from, double rx, double ry, double rot_deg, bool large_arc,
                   bool sweep, Vec2 to, std::vector<PathCommand>& out) {
    auto emit_line = [&] {
        out.push_back({PathOp::Line, true, {to.x, to.y}});
    };
    rx = std::abs(rx);
    ry = std::abs(ry);
    if (rx == 0 || ry == 0 || (from.x == to.x && from.y == to.y)) {
        emit_line();
        return;
    }

    const double phi = rot_deg * (M_PI / 180.0);
    const double cosp = std::cos(phi), sinp = std::sin(phi);
    const double hx = (from.x - to.x) / 2.0, hy = (from.y - to.y) / 2.0;
    const double x1p = cosp * hx + sinp * hy;
    const double y1p = -sinp * hx + cosp * hy;

    double lambda = (x1p * x1p) / (rx * rx) + (y1p * y1p) / (ry * ry);
    if (lambda > 1) {
        const double s = std::sqrt(lambda);
        rx *= s;
        ry *= s;
    }

    double num = rx * rx * ry * ry - rx * rx * y1p * y1p - ry * ry * x1p * x1p;
    double den = rx * rx * y1p * y1p + ry * ry * x1p * x1p;
    double coef = den > 0 ? std::sqrt(std::max(0.0, num / den)) : 0.0;
    if (large_arc == sweep) coef = -coef;
    const double cxp = coef * rx * y1p / ry;
    const double cyp = -coef * ry * x1p / rx;
    const double cx = cosp * cxp - sinp * cyp + (from.x + to.x) / 2.0;
    const double cy = sinp * cxp + cosp * cyp + (from.y + to.y) / 2.0;

    auto angle = [](double ux, double uy, double vx, double vy) {
        const double dot = ux * vx + uy * vy;
        const double len = std::sqrt((ux * ux + uy * uy) * (vx * vx + vy * vy));
        double a = std::acos(std::clamp(dot / len, -1.0, 1.0));
        if (ux * vy - uy * vx < 0) a = -a;
        return a;
    };
    const double theta1 = angle(1, 0, (x1p - cxp) / rx, (y1p - cyp) / ry);
    double dtheta = angle((x1p - cxp) / rx, (y1p - cyp) / ry, (-x1p - cxp) / rx, (-y1p - cyp) / ry);
    if (!sweep && dtheta > 0) dtheta -= 2 * M_PI;
    if (sweep && dtheta < 0) dtheta += 2 * M_PI;

    const int segments = std::max(1, static_cast<int>(std::ceil(std::abs(dtheta) / (M_PI / 2.0))));
    const double delta = dtheta / segments;
    const double k = 4.0 / 3.0 * std::tan(delta / 4.0);

    auto point_at = [&](double t) -> Vec2 {
        const double px = rx * std::cos(t), py = ry * std::sin(t);
        return {cx + cosp * px - sinp * py, cy + sinp * px + cosp * py};
    };
    auto deriv_at = [&](double t) -> Vec2 {
        const double px = -rx * std::sin(t), py = ry * std::cos(t);
        return {cosp * px - sinp * py, sinp * px + cosp * py};
    };

    double t = theta1;
    Vec2 p0 = from;
    for (int i = 0; i < segments; ++i) {
        const double t2 = t + delta;
        Vec2 p3 = (i == segments - 1) ? to : point_at(t2);
        const Vec2 d0 = deriv_at(t), d1 = deriv_at(t2);
        const Vec2 c1{p0.x + k * d0.x, p0.y + k * d0.y};
        const Vec2 c2{p3.x - k * d1.x, p3.y - k * d1.y};
        out.push_back({PathOp::Cubic, true, {c1.x, c1.y, c2.x, c2.y, p3.x, p3.y}});
        p0 = p3;
        t = t2;
    }
}

}  // namespace

PathData parse_path(std::string_view d) {
    PathScanner s{d};
    PathData path;

    s.skip_space();
    if (s.pos >= d.size()) throw PathSyntaxError("empty path data", 0);

    Vec2 cp{0, 0};
    Vec2 subpath_start{0, 0};
    bool first = true;

    while (true) {
        s.skip_space();
        if (s.pos >= d.size()) break;

        const char letter = d[s.pos];
        const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(letter)));
        const bool absolute = std::isupper(static_cast<unsigned char>(letter)) != 0;
        if (lower != 'm' && lower != 'l' && lower != 'h' && lower != 'v' && lower != 'c' &&
            lower != 's' && lower != 'q' && lower != 't' && lower != 'a' && lower != 'z')
            throw PathSyntaxError(std::string("unknown path command '") + letter + "'", s.pos);
        if (first && lower != 'm')
            throw PathSyntaxError("path must begin with a moveto", s.pos);
        ++s.pos;

        if (lower == 'z') {
            path.commands.push_back({PathOp::Close, absolute, {}});
            cp = subpath_start;
            first = false;
            continue;
        }

        bool first_group = true;
        while (true) {
            if (lower == 'a') {
                const double rx = s.number();
                const double ry = s.number();
                const double rot = s.number();
                const bool fa = s.flag();
                const bool fs = s.flag();
                double x = s.number();
                double y = s.number();
                if (!absolute) {
                    x += cp.x;
                    y += cp.y;
                }
                arc_to_cubics(cp, rx, ry, rot, fa, fs, {x, y}, path.commands);
                cp = {x, y};
            } else {
                PathOp op = static_cast<PathOp>(lower);
                bool abs_flag = absolute;
                if (lower == 'm' && !first_group) op = PathOp::Line;  // implicit lineto
                std::vector<double> args(path_op_arity(op));
                for (double& a : args) a = s.number();

                // The very first moveto is interpreted from (0,0), so its
                // relative form is the same point; normalize to absolute.
                if (first && lower == 'm') abs_flag = true;

                switch (op) {
                    case PathOp::Move:
                        cp = abs_flag ? Vec2{args[0], args[1]} : Vec2{cp.x + args[0], cp.y + args[1]};
                        subpath_start = cp;
                        break;
                    case PathOp::Line:
                    case PathOp::SmoothQuad:
                        cp = abs_flag ? Vec2{args[0], args[1]} : Vec2{cp.x + args[0], cp.y + args[1]};
                        break;
                    case PathOp::HLine:
                        cp.x = abs_flag ? args[0] : cp.x + args[0];
                        break;
                    case PathOp::VLine:
                        cp.y = abs_flag ? args[0] : cp.y + args[0];
                        break;
                    case PathOp::Cubic:
                        cp = abs_flag ? Vec2{args[4], args[5]} : Vec2{cp.x + args[4], cp.y + args[5]};
                        break;
                    case PathOp::SmoothCubic:
                    case PathOp::Quad:
                        cp = abs_flag ? Vec2{args[2], args[3]} : Vec2{cp.x + args[2], cp.y + args[3]};
                        break;
                    case PathOp::Close: break;
                }
                path.commands.push_back({op, abs_flag, std::move(args)});
            }
            first = false;
            first_group = false;
            s.skip_seps();
            if (!s.at_number()) break;
        }
    }

    if (path.commands.empty()) throw PathSyntaxError("empty path data", 0);
    return path;
}

namespace {

// Shared walker for relative/absolute rewrites. `make_relative` picks the
// output flavor; the first moveto is always written absolute.
PathData rewrite(const PathData& path, bool make_relative) {
    PathData out;
    out.commands.reserve(path.commands.size());
    Vec2 cp{0, 0};
    Vec2 subpath_start{0, 0};
    bool first = true;

    for (const PathCommand& cmd : path.commands) {
        PathCommand next = cmd;
        const std::vector<double>& a = cmd.args;

        // Absolute endpoint/controls of this command.
        std::vector<double> abs_args(a.size());
        if (cmd.absolute) {
            abs_args = a;
            if (cmd.op == PathOp::HLine) abs_args[0] = a[0];
            if (cmd.op == PathOp::VLine) abs_args[0] = a[0];
        } else {
            switch (cmd.op) {
                case PathOp::HLine: abs_args[0] = cp.x + a[0]; break;
                case PathOp::VLine: abs_args[0] = cp.y + a[0]; break;
                case PathOp::Close: break;
                default:
                    for (std::size_t i = 0; i < a.size(); i += 2) {
                        abs_args[i] = cp.x + a[i];
                        abs_args[i + 1] = cp.y + a[i + 1];
                    }
            }
        }

        const bool want_abs = !make_relative || (first && cmd.op == PathOp::Move);
        if (cmd.op == PathOp::Close) {
            next.absolute = !make_relative;
            next.args.clear();
        } else if (cmd.absolute == want_abs) {
            // Already in the requested flavor; keep the numbers bit-exact.
            next = cmd;
            next.absolute = want_abs;
        } else if (want_abs) {
            next.absolute = true;
            next.args = abs_args;
        } else {
            next.absolute = false;
            switch (cmd.op) {
                case PathOp::HLine: next.args = {abs_args[0] - cp.x}; break;
                case PathOp::VLine: next.args = {abs_args[0] - cp.y}; break;
                default:
                    next.args.resize(abs_args.size());
                    for (std::size_t i = 0; i < abs_args.size(); i += 2) {
                        next.args[i] = abs_args[i] - cp.x;
                        next.args[i + 1] = abs_args[i + 1] - cp.y;
                    }
            }
        }
        out.commands.push_back(std::move(next));

        // Advance the current point.
        switch (cmd.op) {
            case PathOp::Move:
                cp = {abs_args[0], abs_args[1]};
                subpath_start = cp;
                break;
            case PathOp::Line:
            case PathOp::SmoothQuad:
                cp = {abs_args[0], abs_args[1]};
                break;
            case PathOp::HLine: cp.x = abs_args[0]; break;
            case PathOp::VLine: cp.y = abs_args[0]; break;
            case PathOp::Cubic: cp = {abs_args[4], abs_args[5]}; break;
            case PathOp::SmoothCubic:
            case PathOp::Quad: cp = {abs_args[2], abs_args[3]}; break;
            case PathOp::Close: cp = subpath_start; break;
        }
        first = false;
    }
    return out;
}

}  // namespace

PathData to_relative(const PathData& path) { return rewrite(path, true); }
PathData to_absolute(const PathData& path) { return rewrite(path, false); }

std::string serialize_path(const PathData& path) {
    std::string out;
    for (const PathCommand& cmd : path.commands) {
        if (!out.empty()) out += ' ';
        char letter = static_cast<char>(cmd.op);
        if (cmd.absolute) letter = static_cast<char>(std::toupper(static_cast<unsigned char>(letter)));
        out += letter;
        if (cmd.op == PathOp::HLine || cmd.op == PathOp::VLine) {
            out += format_number(cmd.args[0]);
        } else {
            for (std::size_t i = 0; i < cmd.args.size(); i += 2) {
                if (i) out += ' ';
                out += format_number(cmd.args[i]);
                out += ',';
                out += format_number(cmd.args[i + 1]);
            }
        }
    }
    return out;
}

namespace {

double dist_to_segment(Vec2 p, Vec2 a, Vec2 b) {
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = 0;
    if (len2 > 0) t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
    const double px = a.x + t * dx - p.x;
    const double py = a.y + t * dy - p.y;
    return std::sqrt(px * px + py * py);
}

// The control polygon stays within `tol` of the chord, so the whole curve
// does too (convex hull bound).
void subdivide_cubic(Vec2 p0, Vec2 c1, Vec2 c2, Vec2 p3, double tol, int depth,
                     std::vector<Vec2>& out) {
    const double flat = std::max(dist_to_segment(c1, p0, p3), dist_to_segment(c2, p0, p3));
    if (flat <= tol || depth >= 24) {
        out.push_back(p3);
        return;
    }
    auto mid = [](Vec2 a, Vec2 b) { return Vec2{(a.x + b.x) / 2, (a.y + b.y) / 2}; };
    const Vec2 p01 = mid(p0, c1), p12 = mid(c1, c2), p23 = mid(c2, p3);
    const Vec2 p012 = mid(p01, p12), p123 = mid(p12, p23);
    const Vec2 m = mid(p012, p123);
    subdivide_cubic(p0, p01, p012, m, tol, depth + 1, out);
    subdivide_cubic(m, p123, p23, p3, tol, depth + 1, out);
}

std::vector<Polyline> flatten_impl(const PathData& path, double tol, const TransformMatrix* m) {
    const PathData abs = to_absolute(path);
    std::vector<Polyline> out;

    auto xf = [&](Vec2 p) { return m ? m->apply(p) : p; };

    Vec2 cp{0, 0};
    Vec2 subpath_start{0, 0};
    Vec2 prev_cubic_c2{0, 0};
    Vec2 prev_quad_c{0, 0};
    PathOp prev_op = PathOp::Move;
    bool open = false;

    auto ensure_open = [&] {
        if (!open) {
            out.push_back({});
            out.back().points.push_back(xf(cp));
            open = true;
        }
    };
    auto add_cubic = [&](Vec2 c1, Vec2 c2, Vec2 p3) {
        ensure_open();
        subdivide_cubic(xf(cp), xf(c1), xf(c2), xf(p3), tol, 0, out.back().points);
        cp = p3;
    };

    for (const PathCommand& cmd : abs.commands) {
        const std::vector<double>& a = cmd.args;
        switch (cmd.op) {
            case PathOp::Move:
                cp = {a[0], a[1]};
                subpath_start = cp;
                open = false;
                break;
            case PathOp::Line:
                ensure_open();
                cp = {a[0], a[1]};
                out.back().points.push_back(xf(cp));
                break;
            case PathOp::HLine:
                ensure_open();
                cp.x = a[0];
                out.back().points.push_back(xf(cp));
                break;
            case PathOp::VLine:
                ensure_open();
                cp.y = a[0];
                out.back().points.push_back(xf(cp));
                break;
            case PathOp::Cubic: {
                Vec2 c2{a[2], a[3]};
                add_cubic({a[0], a[1]}, c2, {a[4], a[5]});
                prev_cubic_c2 = c2;
                break;
            }
            case PathOp::SmoothCubic: {
                Vec2 c1 = (prev_op == PathOp::Cubic || prev_op == PathOp::SmoothCubic)
                              ? reflect(cp, prev_cubic_c2)
                              : cp;
                Vec2 c2{a[0], a[1]};
                add_cubic(c1, c2, {a[2], a[3]});
                prev_cubic_c2 = c2;
                break;
            }
            case PathOp::Quad: {
                Vec2 q{a[0], a[1]}, p3{a[2], a[3]};
                Vec2 c1{cp.x + 2.0 / 3.0 * (q.x - cp.x), cp.y + 2.0 / 3.0 * (q.y - cp.y)};
                Vec2 c2{p3.x + 2.0 / 3.0 * (q.x - p3.x), p3.y + 2.0 / 3.0 * (q.y - p3.y)};
                add_cubic(c1, c2, p3);
                prev_quad_c = q;
                break;
            }
            case PathOp::SmoothQuad: {
                Vec2 q = (prev_op == PathOp::Quad || prev_op == PathOp::SmoothQuad)
                             ? reflect(cp, prev_quad_c)
                             : cp;
                Vec2 p3{a[0], a[1]};
                Vec2 c1{cp.x + 2.0 / 3.0 * (q.x - cp.x), cp.y + 2.0 / 3.0 * (q.y - cp.y)};
                Vec2 c2{p3.x + 2.0 / 3.0 * (q.x - p3.x), p3.y + 2.0 / 3.0 * (q.y - p3.y)};
                add_cubic(c1, c2, p3);
                prev_quad_c = q;
                break;
            }
            case PathOp::Close:
                if (open) out.back().closed = true;
                cp = subpath_start;
                open = false;
                break;
        }
        prev_op = cmd.op;
    }
    return out;
}

}  // namespace

std::vector<Polyline> flatten(const PathData& path, double tolerance) {
    return flatten_impl(path, tolerance, nullptr);
}

Rect bbox(const PathData& path, const TransformMatrix& m) {
    const auto polys = flatten_impl(path, 1e-3, &m);
    Rect r{0, 0, 0, 0};
    bool any = false;
    for (const Polyline& poly : polys) {
        for (Vec2 p : poly.points) {
            if (!any) {
                r = {p.x, p.y, p.x, p.y};
                any = true;
            } else {
                r.x0 = std::min(r.x0, p.x);
                r.y0 = std::min(r.y0, p.y);
                r.x1 = std::max(r.x1, p.x);
                r.y1 = std::max(r.y1, p.y);
            }
        }
    }
    return r;
}

}  // namespace svgdelta
