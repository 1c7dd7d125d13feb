#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "svgdelta/corpus.hpp"
#include "svgdelta/errors.hpp"
#include "svgdelta/raster.hpp"
#include "svgdelta/ssu.hpp"
#include "svgdelta/transform.hpp"

using namespace svgdelta;

namespace {

SvgDocument doc500(const std::string& body) {
    return canonicalize(parse_svg("<svg width=\"500\" height=\"500\">" + body + "</svg>"));
}

int count_color(const Framebuffer& fb, Rgba c) {
    int n = 0;
    for (int y = 0; y < fb.height; ++y)
        for (int x = 0; x < fb.width; ++x)
            if (fb.at(x, y) == c) ++n;
    return n;
}

// Independent point-in-polygon winding at a single point (ray to +x).
int winding_at(const std::vector<Vec2>& poly, Vec2 p) {
    int winding = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[(i + 1) % poly.size()];
        if (a.y <= p.y) {
            if (b.y > p.y && (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) > 0) ++winding;
        } else {
            if (b.y <= p.y && (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x) < 0) --winding;
        }
    }
    return winding;
}

std::vector<Vec2> pentagram(Vec2 center, double radius) {
    std::vector<Vec2> pts;
    for (int i = 0; i < 5; ++i) {
        const double angle = -M_PI / 2 + i * 4 * M_PI / 5;  // every second vertex
        pts.push_back({center.x + radius * std::cos(angle), center.y + radius * std::sin(angle)});
    }
    return pts;
}

std::string points_attr(const std::vector<Vec2>& pts) {
    std::string out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(pts[i].x) + "," + std::to_string(pts[i].y);
    }
    return out;
}

}  // namespace

TEST_CASE("a full-viewport black rect paints every pixel") {
    const SvgDocument doc = doc500("<rect width=\"500\" height=\"500\" fill=\"black\"/>");
    const Framebuffer fb = rasterize(doc, 500, 500, kWhite);
    CHECK(count_color(fb, kBlack) == 500 * 500);
}

TEST_CASE("integer-aligned rect coverage matches the analytic area") {
    const SvgDocument doc =
        doc500("<rect x=\"100\" y=\"100\" width=\"100\" height=\"100\" fill=\"black\"/>");
    const Framebuffer fb = rasterize(doc, 500, 500, kWhite);
    const int black = count_color(fb, kBlack);
    CHECK(black >= 9900);
    CHECK(black <= 10100);
}

TEST_CASE("winding rule decides the pentagram core") {
    const auto star = pentagram({250, 250}, 200);
    const Vec2 center{250, 250};
    // Oracle: the center winds twice, so nonzero fills it, even-odd does not.
    CHECK(winding_at(star, center) != 0);
    CHECK(winding_at(star, center) % 2 == 0);

    const SvgDocument nonzero =
        doc500("<polygon points=\"" + points_attr(star) + "\" fill=\"black\"/>");
    const SvgDocument evenodd = doc500("<polygon fill-rule=\"evenodd\" points=\"" +
                                       points_attr(star) + "\" fill=\"black\"/>");
    const Framebuffer fb_nz = rasterize(nonzero, 500, 500, kWhite);
    const Framebuffer fb_eo = rasterize(evenodd, 500, 500, kWhite);
    CHECK(fb_nz.at(250, 250) == kBlack);
    CHECK(fb_eo.at(250, 250) == kWhite);
    // The outer points fill under both rules.
    CHECK(fb_nz.at(250, 80) == kBlack);
    CHECK(fb_eo.at(250, 80) == kBlack);
}

TEST_CASE("document order is painter's order") {
    const Rgba red{255, 0, 0, 255}, blue{0, 0, 255, 255};
    const SvgDocument ab = doc500(
        "<rect x=\"10\" y=\"10\" width=\"60\" height=\"60\" fill=\"red\"/>"
        "<rect x=\"40\" y=\"40\" width=\"60\" height=\"60\" fill=\"blue\"/>");
    const SvgDocument ba = doc500(
        "<rect x=\"40\" y=\"40\" width=\"60\" height=\"60\" fill=\"blue\"/>"
        "<rect x=\"10\" y=\"10\" width=\"60\" height=\"60\" fill=\"red\"/>");
    const Framebuffer fb_ab = rasterize(ab, 500, 500, kWhite);
    const Framebuffer fb_ba = rasterize(ba, 500, 500, kWhite);
    CHECK(fb_ab.at(50, 50) == blue);
    CHECK(fb_ba.at(50, 50) == red);
    CHECK(fb_ab.at(20, 20) == red);
    CHECK(fb_ba.at(20, 20) == red);
}

TEST_CASE("half opacity over white lands mid-gray") {
    const SvgDocument doc =
        doc500("<rect x=\"0\" y=\"0\" width=\"500\" height=\"500\" fill=\"black\" opacity=\"0.5\"/>");
    const Framebuffer fb = rasterize(doc, 500, 500, kWhite);
    const Rgba p = fb.at(250, 250);
    CHECK(p == Rgba{128, 128, 128, 255});
}

TEST_CASE("nested group transforms compose") {
    const SvgDocument doc = doc500(
        "<g transform=\"scale(2)\"><g transform=\"translate(10,0)\">"
        "<rect x=\"0\" y=\"0\" width=\"20\" height=\"20\" fill=\"black\"/></g></g>");
    const Framebuffer fb = rasterize(doc, 500, 500, kWhite);
    // Device rect is [20,60) x [0,40).
    CHECK(fb.at(30, 20) == kBlack);
    CHECK(fb.at(10, 20) == kWhite);
    CHECK(fb.at(70, 20) == kWhite);
    CHECK(fb.at(30, 50) == kWhite);
}

TEST_CASE("integer translation shifts the image exactly") {
    const SvgDocument a =
        doc500("<circle cx=\"100.3\" cy=\"100.7\" r=\"40\" fill=\"navy\"/>");
    const SvgDocument b = doc500(
        "<g transform=\"translate(30,20)\"><circle cx=\"100.3\" cy=\"100.7\" r=\"40\" fill=\"navy\"/></g>");
    const Framebuffer fa = rasterize(a, 300, 300, kWhite);
    const Framebuffer fb = rasterize(b, 300, 300, kWhite);
    // The source document is 500x500 rendered at 300x300: translate(30,20)
    // in user units is (18,12) device pixels, an integer vector.
    for (int y = 0; y < 300 - 12; ++y)
        for (int x = 0; x < 300 - 18; ++x)
            if (!(fa.at(x, y) == fb.at(x + 18, y + 12))) {
                CAPTURE(x);
                CAPTURE(y);
                REQUIRE(fa.at(x, y) == fb.at(x + 18, y + 12));
            }
}

TEST_CASE("rasterization is deterministic") {
    const CorpusItem item = generate_item({.seed = 4, .count = 1, .updates = 2}, 0);
    const Framebuffer a = rasterize(item.seq.frames[0], 500, 500, kWhite);
    const Framebuffer b = rasterize(item.seq.frames[0], 500, 500, kWhite);
    CHECK(a == b);
}

TEST_CASE("strokes and gradients are unsupported, with the node named") {
    const SvgDocument stroked =
        doc500("<rect id=\"3\" width=\"10\" height=\"10\" stroke=\"red\"/>");
    try {
        rasterize(stroked, 100, 100, kWhite);
        FAIL("expected UnsupportedFeatureError");
    } catch (const UnsupportedFeatureError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("stroke") != std::string::npos);
        CHECK(msg.find("3") != std::string::npos);
    }
    CHECK_THROWS_AS(
        rasterize(doc500("<rect width=\"5\" height=\"5\" fill=\"url(#g)\"/>"), 100, 100, kWhite),
        UnsupportedFeatureError);
    CHECK_THROWS_AS(
        rasterize(doc500("<rect width=\"5\" height=\"5\" rx=\"2\"/>"), 100, 100, kWhite),
        UnsupportedFeatureError);
}

TEST_CASE("stroke none is not a stroke") {
    const SvgDocument doc = doc500("<rect width=\"10\" height=\"10\" stroke=\"none\"/>");
    CHECK_NOTHROW(rasterize(doc, 100, 100, kWhite));
}

TEST_CASE("filters are skipped and flagged, never fatal") {
    const SvgDocument doc = doc500(
        "<defs><filter id=\"soft\"><feColorMatrix values=\"0.5\"/></filter></defs>"
        "<rect width=\"10\" height=\"10\" filter=\"url(#soft)\"/>");
    std::vector<std::string> warnings;
    CHECK_NOTHROW(rasterize(doc, 100, 100, kWhite, &warnings));
    REQUIRE(!warnings.empty());
    CHECK(warnings[0].find("filter") != std::string::npos);
}

TEST_CASE("fill none draws nothing") {
    const SvgDocument doc = doc500("<rect width=\"500\" height=\"500\" fill=\"none\"/>");
    const Framebuffer fb = rasterize(doc, 100, 100, kWhite);
    CHECK(count_color(fb, kWhite) == 100 * 100);
}

TEST_CASE("render_sequence with empty deltas yields identical framebuffers") {
    const CorpusItem item = generate_item({.seed = 6, .count = 1, .updates = 0}, 0);
    UpdateSequence u;
    u.initial = item.seq.frames[0];
    u.deltas = {{1, {}}, {2, {}}, {3, {}}};
    const auto frames = render_sequence(u, 120, 120);
    REQUIRE(frames.size() == 4);
    for (std::size_t i = 1; i < frames.size(); ++i) CHECK(frames[i] == frames[0]);
}

TEST_CASE("corpus items render without unsupported features") {
    const CorpusItem item = generate_item({.seed = 42, .count = 1, .updates = 6}, 0);
    const UpdateSequence u = extract(item.seq);
    std::vector<std::string> warnings;
    const auto frames = render_sequence(u, 250, 250, kWhite, &warnings);
    CHECK(frames.size() == u.update_count() + 1);
    CHECK(warnings.empty());
}
