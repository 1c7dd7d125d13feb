#include "svgdelta/raster.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>

#include "svgdelta/errors.hpp"
#include "svgdelta/numeric.hpp"
#include "svgdelta/path_data.hpp"
#include "svgdelta/transform.hpp"

namespace svgdelta {

Framebuffer Framebuffer::filled(int width, int height, Rgba color) {
    Framebuffer fb;
    fb.width = width;
    fb.height = height;
    fb.pixels.resize(static_cast<std::size_t>(width) * height * 4);
    for (std::size_t i = 0; i < fb.pixels.size(); i += 4) {
        fb.pixels[i] = color.r;
        fb.pixels[i + 1] = color.g;
        fb.pixels[i + 2] = color.b;
        fb.pixels[i + 3] = color.a;
    }
    return fb;
}

std::optional<Paint> parse_color(std::string_view value) {
    std::string v;
    for (char c : value)
        if (!std::isspace(static_cast<unsigned char>(c)))
            v += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

    if (v == "none") return Paint{true, kBlack};

    static const std::array<std::pair<std::string_view, Rgba>, 16> kNamed = {{
        {"aqua", {0, 255, 255, 255}},    {"black", {0, 0, 0, 255}},
        {"blue", {0, 0, 255, 255}},      {"fuchsia", {255, 0, 255, 255}},
        {"gray", {128, 128, 128, 255}},  {"green", {0, 128, 0, 255}},
        {"lime", {0, 255, 0, 255}},      {"maroon", {128, 0, 0, 255}},
        {"navy", {0, 0, 128, 255}},      {"olive", {128, 128, 0, 255}},
        {"purple", {128, 0, 128, 255}},  {"red", {255, 0, 0, 255}},
        {"silver", {192, 192, 192, 255}},{"teal", {0, 128, 128, 255}},
        {"white", {255, 255, 255, 255}}, {"yellow", {255, 255, 0, 255}},
    }};
    for (const auto& [name, color] : kNamed)
        if (v == name) return Paint{false, color};

    auto hex = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        return -1;
    };
    if (v.size() == 4 && v[0] == '#') {
        int r = hex(v[1]), g = hex(v[2]), b = hex(v[3]);
        if (r < 0 || g < 0 || b < 0) return std::nullopt;
        return Paint{false, {static_cast<std::uint8_t>(r * 17), static_cast<std::uint8_t>(g * 17),
                             static_cast<std::uint8_t>(b * 17), 255}};
    }
    if (v.size() == 7 && v[0] == '#') {
        int c[6];
        for (int i = 0; i < 6; ++i) {
            c[i] = hex(v[i + 1]);
            if (c[i] < 0) return std::nullopt;
        }
        return Paint{false, {static_cast<std::uint8_t>(c[0] * 16 + c[1]),
                             static_cast<std::uint8_t>(c[2] * 16 + c[3]),
                             static_cast<std::uint8_t>(c[4] * 16 + c[5]), 255}};
    }
    return std::nullopt;
}

namespace {

constexpr int kSubsamples = 4;  // 4x4 grid per pixel
constexpr double kFlattenTolerancePx = 0.1;

struct Style {
    std::string fill = "black";
    std::string fill_rule = "nonzero";
    double fill_opacity = 1.0;
    std::string stroke = "none";
};

struct FillJob {
    std::vector<Polyline> polylines;  // device space
    bool even_odd = false;
    Rgba color;
    double alpha = 1.0;  // accumulated opacity to multiply into color.a
};

double opacity_attr(const SvgNode& node, std::string_view name) {
    const std::string* v = node.find_attr(name);
    if (!v) return 1.0;
    auto n = parse_number(*v);
    return n ? std::clamp(*n, 0.0, 1.0) : 1.0;
}

double number_attr(const SvgNode& node, std::string_view name, double fallback) {
    const std::string* v = node.find_attr(name);
    if (!v) return fallback;
    auto n = parse_number(*v);
    return n ? *n : fallback;
}

std::string describe(const SvgNode& node) {
    std::string out = "<" + node.tag;
    if (node.id) out += " id=\"" + std::to_string(*node.id) + "\"";
    out += ">";
    return out;
}

// Ellipse as four cubic arcs.
PathData ellipse_path(double cx, double cy, double rx, double ry) {
    constexpr double k = 0.5522847498307936;
    PathData p;
    auto cubic = [&](double c1x, double c1y, double c2x, double c2y, double x, double y) {
        p.commands.push_back({PathOp::Cubic, true, {c1x, c1y, c2x, c2y, x, y}});
    };
    p.commands.push_back({PathOp::Move, true, {cx + rx, cy}});
    cubic(cx + rx, cy + k * ry, cx + k * rx, cy + ry, cx, cy + ry);
    cubic(cx - k * rx, cy + ry, cx - rx, cy + k * ry, cx - rx, cy);
    cubic(cx - rx, cy - k * ry, cx - k * rx, cy - ry, cx, cy - ry);
    cubic(cx + k * rx, cy - ry, cx + rx, cy - k * ry, cx + rx, cy);
    p.commands.push_back({PathOp::Close, false, {}});
    return p;
}

std::optional<PathData> shape_outline(const SvgNode& node) {
    if (node.tag == "path") {
        const std::string* d = node.find_attr("d");
        if (!d) return std::nullopt;
        return parse_path(*d);
    }
    if (node.tag == "rect") {
        if (number_attr(node, "rx", 0) > 0 || number_attr(node, "ry", 0) > 0)
            throw UnsupportedFeatureError("rounded corners (rx/ry) on " + describe(node));
        const double x = number_attr(node, "x", 0), y = number_attr(node, "y", 0);
        const double w = number_attr(node, "width", 0), h = number_attr(node, "height", 0);
        if (w <= 0 || h <= 0) return std::nullopt;
        PathData p;
        p.commands.push_back({PathOp::Move, true, {x, y}});
        p.commands.push_back({PathOp::Line, true, {x + w, y}});
        p.commands.push_back({PathOp::Line, true, {x + w, y + h}});
        p.commands.push_back({PathOp::Line, true, {x, y + h}});
        p.commands.push_back({PathOp::Close, false, {}});
        return p;
    }
    if (node.tag == "circle") {
        const double r = number_attr(node, "r", 0);
        if (r <= 0) return std::nullopt;
        return ellipse_path(number_attr(node, "cx", 0), number_attr(node, "cy", 0), r, r);
    }
    if (node.tag == "ellipse") {
        const double rx = number_attr(node, "rx", 0), ry = number_attr(node, "ry", 0);
        if (rx <= 0 || ry <= 0) return std::nullopt;
        return ellipse_path(number_attr(node, "cx", 0), number_attr(node, "cy", 0), rx, ry);
    }
    if (node.tag == "polygon" || node.tag == "polyline") {
        const std::string* pts = node.find_attr("points");
        if (!pts) return std::nullopt;
        auto nums = parse_number_list(*pts);
        if (!nums || nums->size() < 6 || nums->size() % 2 != 0) return std::nullopt;
        PathData p;
        p.commands.push_back({PathOp::Move, true, {(*nums)[0], (*nums)[1]}});
        for (std::size_t i = 2; i < nums->size(); i += 2)
            p.commands.push_back({PathOp::Line, true, {(*nums)[i], (*nums)[i + 1]}});
        // Fill treats open outlines as closed.
        p.commands.push_back({PathOp::Close, false, {}});
        return p;
    }
    return std::nullopt;  // line has no fillable area
}

bool is_shape_tag(std::string_view tag) {
    return tag == "path" || tag == "rect" || tag == "circle" || tag == "ellipse" ||
           tag == "line" || tag == "polyline" || tag == "polygon";
}

bool is_nonrender_tag(std::string_view tag) {
    return tag == "defs" || tag == "filter" || tag == "clipPath" || tag == "mask" ||
           tag == "symbol" || tag == "marker" || tag == "style" || tag == "title" ||
           tag == "desc" || tag == "metadata" || tag == "feColorMatrix" || tag == "feMorphology";
}

void collect_jobs(const SvgNode& node, TransformMatrix ctm, Style style, double alpha,
                  std::vector<FillJob>& jobs, std::vector<std::string>* warnings) {
    if (is_nonrender_tag(node.tag)) return;

    auto warn = [&](const std::string& msg) {
        if (warnings) warnings->push_back(msg);
    };

    if (node.find_attr("filter"))
        warn("filter effect ignored on " + describe(node));

    if (const std::string* t = node.find_attr("transform"))
        ctm = multiply(ctm, parse_transform(*t));
    if (const std::string* f = node.find_attr("fill")) style.fill = *f;
    if (const std::string* fr = node.find_attr("fill-rule")) style.fill_rule = *fr;
    if (node.find_attr("fill-opacity")) style.fill_opacity = opacity_attr(node, "fill-opacity");
    if (const std::string* s = node.find_attr("stroke")) style.stroke = *s;
    alpha *= opacity_attr(node, "opacity");

    if (node.tag == "svg" || node.tag == "g") {
        for (const SvgNode& child : node.children)
            collect_jobs(child, ctm, style, alpha, jobs, warnings);
        return;
    }

    if (!is_shape_tag(node.tag)) {
        warn("unsupported element skipped: " + describe(node));
        return;
    }

    if (style.stroke != "none" && !style.stroke.empty()) {
        auto paint = parse_color(style.stroke);
        if (!paint || !paint->none)
            throw UnsupportedFeatureError("stroke painting on " + describe(node) +
                                          " (attribute stroke=\"" + style.stroke + "\")");
    }

    auto paint = parse_color(style.fill);
    if (!paint) {
        if (style.fill.rfind("url(", 0) == 0)
            throw UnsupportedFeatureError("paint server fill on " + describe(node) +
                                          " (attribute fill=\"" + style.fill + "\")");
        throw UnsupportedFeatureError("unrecognized fill on " + describe(node) +
                                      " (attribute fill=\"" + style.fill + "\")");
    }
    if (paint->none) return;

    std::optional<PathData> outline = shape_outline(node);
    if (!outline) return;

    FillJob job;
    job.polylines = flatten(*outline, kFlattenTolerancePx);
    for (Polyline& poly : job.polylines)
        for (Vec2& p : poly.points) p = ctm.apply(p);
    job.even_odd = style.fill_rule == "evenodd";
    job.color = paint->color;
    job.alpha = alpha * style.fill_opacity;
    if (job.alpha > 0) jobs.push_back(std::move(job));
}

struct Edge {
    double x0, y0, x1, y1;  // y0 < y1 (downward in device space)
    int dir;                // +1 when the original edge pointed down
};

void fill_job(Framebuffer& fb, const FillJob& job) {
    std::vector<Edge> edges;
    double min_y = 1e300, max_y = -1e300;
    for (const Polyline& poly : job.polylines) {
        const std::size_t n = poly.points.size();
        if (n < 2) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 a = poly.points[i];
            // Filling treats every outline as closed.
            if (i + 1 == n && a == poly.points[0]) break;
            const Vec2 b = (i + 1 < n) ? poly.points[i + 1] : poly.points[0];
            if (a.y == b.y) continue;
            const Edge e = (a.y < b.y) ? Edge{a.x, a.y, b.x, b.y, 1} : Edge{b.x, b.y, a.x, a.y, -1};
            edges.push_back(e);
            min_y = std::min(min_y, e.y0);
            max_y = std::max(max_y, e.y1);
        }
    }
    if (edges.empty()) return;

    const int row_begin = std::max(0, static_cast<int>(std::floor(min_y)));
    const int row_end = std::min(fb.height - 1, static_cast<int>(std::ceil(max_y)));
    if (row_begin > row_end) return;

    const double src_a_base = job.alpha * job.color.a / 255.0;
    const double sr = job.color.r / 255.0;
    const double sg = job.color.g / 255.0;
    const double sb = job.color.b / 255.0;
    const int max_sub_col = fb.width * kSubsamples - 1;

    std::vector<int> coverage(static_cast<std::size_t>(fb.width));
    std::vector<std::pair<double, int>> crossings;

    for (int py = row_begin; py <= row_end; ++py) {
        std::fill(coverage.begin(), coverage.end(), 0);
        bool any = false;

        for (int sub = 0; sub < kSubsamples; ++sub) {
            const double ys = py + (sub + 0.5) / kSubsamples;
            crossings.clear();
            for (const Edge& e : edges) {
                if (ys < e.y0 || ys >= e.y1) continue;
                const double x = e.x0 + (ys - e.y0) * (e.x1 - e.x0) / (e.y1 - e.y0);
                crossings.emplace_back(x, e.dir);
            }
            if (crossings.empty()) continue;
            std::sort(crossings.begin(), crossings.end());

            int winding = 0;
            double span_start = 0;
            for (const auto& [x, dir] : crossings) {
                const bool was_inside = job.even_odd ? (winding & 1) : (winding != 0);
                winding = job.even_odd ? winding + 1 : winding + dir;
                const bool now_inside = job.even_odd ? (winding & 1) : (winding != 0);
                if (!was_inside && now_inside) {
                    span_start = x;
                } else if (was_inside && !now_inside) {
                    // Subsample columns whose center falls in [span_start, x).
                    int k0 = static_cast<int>(std::ceil(span_start * kSubsamples - 0.5));
                    int k1 = static_cast<int>(std::ceil(x * kSubsamples - 0.5)) - 1;
                    k0 = std::max(k0, 0);
                    k1 = std::min(k1, max_sub_col);
                    if (k0 > k1) continue;
                    any = true;
                    const int p0 = k0 / kSubsamples, p1 = k1 / kSubsamples;
                    if (p0 == p1) {
                        coverage[p0] += k1 - k0 + 1;
                    } else {
                        coverage[p0] += kSubsamples - (k0 % kSubsamples);
                        coverage[p1] += (k1 % kSubsamples) + 1;
                        for (int p = p0 + 1; p < p1; ++p) coverage[p] += kSubsamples;
                    }
                }
            }
        }
        if (!any) continue;

        for (int px = 0; px < fb.width; ++px) {
            const int cov = coverage[px];
            if (cov == 0) continue;
            const double sa = src_a_base * cov / (kSubsamples * kSubsamples);
            if (sa <= 0) continue;
            const Rgba dst = fb.at(px, py);
            const double da = dst.a / 255.0;
            const double out_a = sa + da * (1 - sa);
            Rgba out;
            if (out_a <= 0) {
                out = {0, 0, 0, 0};
            } else {
                auto blend = [&](double sc, double dc) {
                    return static_cast<std::uint8_t>(
                        std::clamp((sc * sa + dc * da * (1 - sa)) / out_a, 0.0, 1.0) * 255.0 + 0.5);
                };
                out.r = blend(sr, dst.r / 255.0);
                out.g = blend(sg, dst.g / 255.0);
                out.b = blend(sb, dst.b / 255.0);
                out.a = static_cast<std::uint8_t>(std::clamp(out_a, 0.0, 1.0) * 255.0 + 0.5);
            }
            fb.set(px, py, out);
        }
    }
}

}  // namespace

Framebuffer rasterize(const SvgDocument& doc, int width, int height, Rgba background,
                      std::vector<std::string>* warnings) {
    if (width <= 0 || height <= 0)
        throw DimensionMismatchError("raster size must be positive");
    if (doc.viewport_w <= 0 || doc.viewport_h <= 0)
        throw DegenerateViewportError("document has no positive viewport");

    Framebuffer fb = Framebuffer::filled(width, height, background);

    const TransformMatrix device =
        TransformMatrix::scale(width / doc.viewport_w, height / doc.viewport_h);
    std::vector<FillJob> jobs;
    collect_jobs(doc.root, device, Style{}, 1.0, jobs, warnings);

    for (const FillJob& job : jobs) fill_job(fb, job);
    return fb;
}

std::vector<Framebuffer> render_sequence(const UpdateSequence& u, int width, int height,
                                         Rgba background, std::vector<std::string>* warnings) {
    const FrameSequence seq = apply(u);
    std::vector<Framebuffer> frames;
    frames.reserve(seq.frames.size());
    for (const SvgDocument& doc : seq.frames)
        frames.push_back(rasterize(doc, width, height, background, warnings));
    return frames;
}

}  // namespace svgdelta
