#include "svgdelta/corpus.hpp"

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "svgdelta/numeric.hpp"
#include "svgdelta/path_data.hpp"
#include "svgdelta/transform.hpp"

namespace svgdelta {

namespace {

// mt19937_64 is fully specified, so raw draws keep items reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double range(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int irange(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }
    bool chance(double p) { return uniform() < p; }

private:
    std::mt19937_64 eng_;
};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct PaletteEntry {
    const char* hex;
    const char* name;
};

constexpr std::array<PaletteEntry, 10> kPalette = {{
    {"#e63946", "red"}, {"#457b9d", "blue"}, {"#2a9d8f", "teal"},
    {"#f4a261", "orange"}, {"#e9c46a", "yellow"}, {"#9b5de5", "purple"},
    {"#264653", "slate"}, {"#80b918", "green"}, {"#f07167", "coral"},
    {"#1d3557", "navy"},
}};

enum class Motion { None, Drift, Pulse, Rotate };

struct MotionSpec {
    Motion kind = Motion::None;
    double amp_x = 0, amp_y = 0;
    double freq = 1, phase = 0;
    double scale_amp = 0;
    double angle_amp = 0;
    Vec2 center;

    TransformMatrix at(double tau) const {
        switch (kind) {
            case Motion::Drift: {
                const double tx = amp_x * std::sin(2 * M_PI * (freq * tau + phase));
                const double ty = amp_y * std::sin(2 * M_PI * (0.7 * freq * tau + 1.31 * phase));
                return TransformMatrix::translate(tx, ty);
            }
            case Motion::Pulse: {
                const double s = 1.0 + scale_amp * std::sin(2 * M_PI * (freq * tau + phase));
                return multiply(TransformMatrix::translate(center.x * (1 - s), center.y * (1 - s)),
                                TransformMatrix::scale(s, s));
            }
            case Motion::Rotate: {
                const double deg = angle_amp * std::sin(2 * M_PI * (freq * tau + phase));
                return multiply(
                    TransformMatrix::translate(center.x, center.y),
                    multiply(TransformMatrix::rotate_deg(deg),
                             TransformMatrix::translate(-center.x, -center.y)));
            }
            case Motion::None: break;
        }
        return TransformMatrix::identity();
    }
};

struct ShapePlan {
    std::string tag;  // rect | circle | ellipse | path | polygon
    int color = 0;
    double fill_opacity = 1.0;  // emitted only when < 1
    // rect
    double x = 0, y = 0, w = 0, h = 0;
    // circle / ellipse
    double cx = 0, cy = 0, r = 0, rx = 0, ry = 0;
    // path / polygon
    std::vector<Vec2> base_points;
    // animation
    MotionSpec motion;
    double morph_amp = 0;  // paths only
    double morph_freq = 1;
    std::vector<double> morph_phase;
    bool fade = false;
    double fade_phase = 0;
    bool fill_switch = false;
    int alt_color = 0;
};

struct GroupPlan {
    MotionSpec motion;
    std::vector<ShapePlan> shapes;
};

struct ItemPlan {
    std::vector<GroupPlan> groups;
    std::vector<double> tau;  // progress per frame, repeats on hold frames
    std::string description;
};

std::vector<Vec2> blob_points(Rng& rng, Vec2 center, double radius, int sides) {
    std::vector<Vec2> pts;
    pts.reserve(sides);
    for (int i = 0; i < sides; ++i) {
        const double angle = 2 * M_PI * i / sides;
        const double r = radius * rng.range(0.65, 1.25);
        pts.push_back({center.x + r * std::cos(angle), center.y + r * std::sin(angle)});
    }
    return pts;
}

// Closed Catmull-Rom loop through the (possibly morphed) points.
PathData blob_path(const std::vector<Vec2>& pts) {
    const std::size_t n = pts.size();
    PathData p;
    p.commands.push_back({PathOp::Move, true, {pts[0].x, pts[0].y}});
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 p0 = pts[(i + n - 1) % n];
        const Vec2 p1 = pts[i];
        const Vec2 p2 = pts[(i + 1) % n];
        const Vec2 p3 = pts[(i + 2) % n];
        const Vec2 c1{p1.x + (p2.x - p0.x) / 6.0, p1.y + (p2.y - p0.y) / 6.0};
        const Vec2 c2{p2.x - (p3.x - p1.x) / 6.0, p2.y - (p3.y - p1.y) / 6.0};
        p.commands.push_back({PathOp::Cubic, true, {c1.x, c1.y, c2.x, c2.y, p2.x, p2.y}});
    }
    p.commands.push_back({PathOp::Close, false, {}});
    return p;
}

MotionSpec random_motion(Rng& rng, Vec2 center, bool allow_rotate) {
    MotionSpec m;
    const int kind = rng.irange(0, allow_rotate ? 2 : 1);
    m.freq = rng.range(0.5, 1.5);
    m.phase = rng.uniform();
    m.center = center;
    switch (kind) {
        case 0:
            m.kind = Motion::Drift;
            m.amp_x = rng.range(8, 40);
            m.amp_y = rng.range(8, 40);
            break;
        case 1:
            m.kind = Motion::Pulse;
            m.scale_amp = rng.range(0.05, 0.25);
            break;
        default:
            m.kind = Motion::Rotate;
            m.angle_amp = rng.range(5, 25);
            break;
    }
    return m;
}

const char* motion_phrase(const MotionSpec& m) {
    switch (m.kind) {
        case Motion::Drift: return "drifts from side to side";
        case Motion::Pulse: return "pulses in place";
        case Motion::Rotate: return "rocks back and forth";
        case Motion::None: break;
    }
    return "stays still";
}

ItemPlan make_plan(Rng& rng, const CorpusOptions& opts) {
    ItemPlan plan;
    const double vp = opts.viewport;

    std::size_t dynamic_nodes = 0;
    int path_count = 0;
    bool any_morph = false;
    const std::size_t target_nodes = opts.min_dynamic_nodes + static_cast<std::size_t>(rng.irange(4, 12));

    while (dynamic_nodes < target_nodes) {
        GroupPlan group;
        const Vec2 gcenter{rng.range(0.2 * vp, 0.8 * vp), rng.range(0.2 * vp, 0.8 * vp)};
        if (rng.chance(0.4)) group.motion = random_motion(rng, gcenter, true);

        const int shapes = rng.irange(3, 6);
        for (int s = 0; s < shapes; ++s) {
            ShapePlan shape;
            shape.color = rng.irange(0, static_cast<int>(kPalette.size()) - 1);
            const Vec2 c{gcenter.x + rng.range(-70, 70), gcenter.y + rng.range(-70, 70)};
            const double size = rng.range(14, 44);

            const int kind = rng.irange(0, 9);
            if (kind <= 3) {
                shape.tag = "path";
                ++path_count;
                // Morphed outlines stay small (each frame re-emits the whole
                // d value); static outlines can afford more segments.
                const bool morph = rng.chance(0.08);
                shape.base_points =
                    blob_points(rng, c, size, morph ? rng.irange(4, 5) : rng.irange(6, 9));
                if (morph) {
                    shape.morph_amp = rng.range(2, 6);
                    shape.morph_freq = rng.range(0.5, 1.5);
                    any_morph = true;
                }
                for (std::size_t i = 0; i < shape.base_points.size(); ++i)
                    shape.morph_phase.push_back(rng.uniform());
            } else if (kind <= 5) {
                shape.tag = "rect";
                shape.x = c.x - size / 2;
                shape.y = c.y - size / 2;
                shape.w = size * rng.range(0.8, 1.6);
                shape.h = size * rng.range(0.5, 1.2);
            } else if (kind == 6) {
                shape.tag = "circle";
                shape.cx = c.x;
                shape.cy = c.y;
                shape.r = size / 2;
            } else if (kind == 7) {
                shape.tag = "ellipse";
                shape.cx = c.x;
                shape.cy = c.y;
                shape.rx = size / 2 * rng.range(1.0, 1.8);
                shape.ry = size / 2 * rng.range(0.5, 1.0);
            } else {
                shape.tag = "polygon";
                shape.base_points = blob_points(rng, c, size, rng.irange(3, 6));
            }

            if (shape.tag != "path" && rng.chance(0.05))
                shape.motion = random_motion(rng, c, shape.tag != "circle");
            if (rng.chance(0.08)) {
                shape.fade = true;
                shape.fade_phase = rng.uniform();
            }
            if (rng.chance(0.08)) {
                shape.fill_switch = true;
                shape.alt_color = (shape.color + rng.irange(1, 5)) % static_cast<int>(kPalette.size());
            }
            if (rng.chance(0.3)) shape.fill_opacity = rng.range(0.55, 0.95);

            group.shapes.push_back(std::move(shape));
            ++dynamic_nodes;
        }
        plan.groups.push_back(std::move(group));
        ++dynamic_nodes;  // the <g> itself
    }

    // Every item carries at least one path morph.
    if (!any_morph || path_count == 0) {
        for (auto& group : plan.groups) {
            for (auto& shape : group.shapes) {
                if (shape.tag == "path") {
                    shape.morph_amp = 4.0;
                    shape.morph_freq = 1.0;
                    any_morph = true;
                    break;
                }
            }
            if (any_morph) break;
        }
        if (!any_morph) {
            // No path was generated at all; convert the first shape.
            ShapePlan& shape = plan.groups.front().shapes.front();
            shape.tag = "path";
            shape.base_points = blob_points(rng, {vp / 2, vp / 2}, 30, 5);
            shape.morph_phase.clear();
            for (std::size_t i = 0; i < shape.base_points.size(); ++i)
                shape.morph_phase.push_back(rng.uniform());
            shape.morph_amp = 4.0;
            shape.morph_freq = 1.0;
        }
    }

    // Hold frames make empty deltas: progress stalls there.
    const std::size_t updates = opts.updates;
    std::vector<bool> hold(updates + 1, false);
    if (updates >= 3) {
        const int holds = rng.irange(1, 3);
        for (int i = 0; i < holds; ++i) hold[static_cast<std::size_t>(rng.irange(2, static_cast<int>(updates)))] = true;
    }
    std::vector<double> progress(updates + 1, 0.0);
    for (std::size_t t = 1; t <= updates; ++t) progress[t] = progress[t - 1] + (hold[t] ? 0.0 : 1.0);
    const double total = progress.back() > 0 ? progress.back() : 1.0;
    plan.tau.resize(updates + 1);
    for (std::size_t t = 0; t <= updates; ++t) plan.tau[t] = progress[t] / total;

    // Describe two featured shapes for the stub scorer.
    const GroupPlan& g0 = plan.groups.front();
    const ShapePlan& s0 = g0.shapes.front();
    const GroupPlan& g1 = plan.groups.back();
    const ShapePlan& s1 = g1.shapes.back();
    auto shape_word = [](const ShapePlan& s) -> std::string {
        if (s.tag == "path") return s.morph_amp > 0 ? "blob morphs its outline" : "blob";
        if (s.tag == "rect") return "rectangle";
        if (s.tag == "circle") return "circle";
        if (s.tag == "ellipse") return "ellipse";
        return "polygon";
    };
    const MotionSpec& m0 = g0.motion.kind != Motion::None ? g0.motion : s0.motion;
    const MotionSpec& m1 = g1.motion.kind != Motion::None ? g1.motion : s1.motion;
    plan.description = std::string("the ") + kPalette[s0.color].name + " " + shape_word(s0) + " " +
                       motion_phrase(m0) + " while the " + kPalette[s1.color].name + " " +
                       shape_word(s1) + " " + motion_phrase(m1);
    return plan;
}

SvgNode build_shape(const ShapePlan& shape, double tau) {
    SvgNode node;
    node.tag = shape.tag;

    const char* fill = kPalette[shape.color].hex;
    if (shape.fill_switch && tau >= 0.5) fill = kPalette[shape.alt_color].hex;
    node.set_attr("fill", fill);
    if (shape.fill_opacity < 1.0) node.set_attr("fill-opacity", format_number(shape.fill_opacity));
    if (shape.fade) {
        const double o = 0.55 + 0.45 * std::sin(2 * M_PI * (tau + shape.fade_phase));
        node.set_attr("opacity", format_number(o));
    }
    if (shape.motion.kind != Motion::None)
        node.set_attr("transform", serialize_transform(shape.motion.at(tau)));

    if (shape.tag == "rect") {
        node.set_attr("x", format_number(shape.x));
        node.set_attr("y", format_number(shape.y));
        node.set_attr("width", format_number(shape.w));
        node.set_attr("height", format_number(shape.h));
    } else if (shape.tag == "circle") {
        node.set_attr("cx", format_number(shape.cx));
        node.set_attr("cy", format_number(shape.cy));
        node.set_attr("r", format_number(shape.r));
    } else if (shape.tag == "ellipse") {
        node.set_attr("cx", format_number(shape.cx));
        node.set_attr("cy", format_number(shape.cy));
        node.set_attr("rx", format_number(shape.rx));
        node.set_attr("ry", format_number(shape.ry));
    } else if (shape.tag == "polygon") {
        std::string points;
        for (std::size_t i = 0; i < shape.base_points.size(); ++i) {
            if (i) points += ' ';
            points += format_number(shape.base_points[i].x);
            points += ',';
            points += format_number(shape.base_points[i].y);
        }
        node.set_attr("points", points);
    } else {  // path
        std::vector<Vec2> pts = shape.base_points;
        if (shape.morph_amp > 0) {
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const double a = 2 * M_PI * (shape.morph_freq * tau + shape.morph_phase[i]);
                pts[i].x += shape.morph_amp * std::sin(a);
                pts[i].y += shape.morph_amp * std::cos(1.7 * a);
            }
        }
        node.set_attr("d", serialize_path(to_relative(blob_path(pts))));
    }
    return node;
}

SvgDocument build_frame(const ItemPlan& plan, const CorpusOptions& opts, double tau) {
    SvgNode root;
    root.tag = "svg";
    root.set_attr("xmlns", "http://www.w3.org/2000/svg");
    root.set_attr("width", format_number(opts.viewport));
    root.set_attr("height", format_number(opts.viewport));

    for (const GroupPlan& group : plan.groups) {
        SvgNode g;
        g.tag = "g";
        if (group.motion.kind != Motion::None)
            g.set_attr("transform", serialize_transform(group.motion.at(tau)));
        for (const ShapePlan& shape : group.shapes) g.children.push_back(build_shape(shape, tau));
        root.children.push_back(std::move(g));
    }

    SvgDocument doc;
    doc.root = std::move(root);
    doc.viewport_w = opts.viewport;
    doc.viewport_h = opts.viewport;
    return canonicalize(doc, {opts.viewport, opts.viewport});
}

}  // namespace

CorpusItem generate_item(const CorpusOptions& options, int index) {
    Rng rng(splitmix64(options.seed ^ splitmix64(static_cast<std::uint64_t>(index) + 1)));
    const ItemPlan plan = make_plan(rng, options);

    CorpusItem item;
    item.description = plan.description;
    item.seq.fps = options.fps;
    item.seq.viewport_w = options.viewport;
    item.seq.viewport_h = options.viewport;
    for (double tau : plan.tau) item.seq.frames.push_back(build_frame(plan, options, tau));
    return item;
}

}  // namespace svgdelta
