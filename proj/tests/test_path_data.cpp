#include <doctest.h>

#include <cmath>
#include <random>

#include "svgdelta/errors.hpp"
#include "svgdelta/path_data.hpp"
#include "test_util.hpp"

using namespace svgdelta;

TEST_CASE("single moveto") {
    const PathData p = parse_path("M0 0");
    REQUIRE(p.commands.size() == 1);
    CHECK(p.commands[0].op == PathOp::Move);
    CHECK(p.commands[0].absolute);
    CHECK(p.commands[0].args == std::vector<double>{0, 0});
}

TEST_CASE("cubic commands carry six parameters") {
    const PathData p = parse_path("M-14,20 c-5,-6 -5,-15 -1,-22");
    REQUIRE(p.commands.size() == 2);
    CHECK(p.commands[0].args == std::vector<double>{-14, 20});
    CHECK(p.commands[1].op == PathOp::Cubic);
    CHECK_FALSE(p.commands[1].absolute);
    CHECK(p.commands[1].args == std::vector<double>{-5, -6, -5, -15, -1, -22});
}

TEST_CASE("truncated parameters raise PathSyntaxError") {
    CHECK_THROWS_AS(parse_path("M0 0 Q1"), PathSyntaxError);
    CHECK_THROWS_AS(parse_path(""), PathSyntaxError);
    CHECK_THROWS_AS(parse_path("L0 0"), PathSyntaxError);  // must start with moveto
    CHECK_THROWS_AS(parse_path("M0 0 X5"), PathSyntaxError);
    try {
        parse_path("M0 0 Q1");
    } catch (const PathSyntaxError& e) {
        CHECK(e.offset >= 7);  // points at the truncation
    }
}

TEST_CASE("implicit repeats expand, moveto repeats become lineto") {
    const PathData p = parse_path("M1 2 3 4 5 6");
    REQUIRE(p.commands.size() == 3);
    CHECK(p.commands[0].op == PathOp::Move);
    CHECK(p.commands[1].op == PathOp::Line);
    CHECK(p.commands[2].op == PathOp::Line);
    CHECK(p.commands[1].absolute);

    const PathData q = parse_path("m1 2 3 4");
    CHECK(q.commands[0].absolute);  // leading moveto normalized
    CHECK(q.commands[1].op == PathOp::Line);
    CHECK_FALSE(q.commands[1].absolute);
}

TEST_CASE("number adjacency forms") {
    const PathData p = parse_path("M.5-.5L1e2,2.5");
    REQUIRE(p.commands.size() == 2);
    CHECK(p.commands[0].args == std::vector<double>{0.5, -0.5});
    CHECK(p.commands[1].args == std::vector<double>{100, 2.5});

    // A second '.' terminates the number: ".5.5" is two numbers.
    const PathData q = parse_path("M0 0 L.5.5");
    CHECK(q.commands[1].args == std::vector<double>{0.5, 0.5});
}

TEST_CASE("trailing half pair is rejected") {
    CHECK_THROWS_AS(parse_path("M0 0 L1 1 2"), PathSyntaxError);
}

TEST_CASE("to_relative keeps the first moveto absolute and relativizes the rest") {
    const PathData p = to_relative(parse_path("M10 10 L20 10"));
    CHECK(serialize_path(p) == "M10,10 l10,0");
}

TEST_CASE("to_relative preserves geometry on the closed triangle") {
    const PathData original = parse_path("M0 0 L10 0 L0 10 Z");
    const PathData rel = to_relative(original);
    CHECK(serialize_path(rel) == "M0,0 l10,0 l-10,10 z");
    CHECK(testutil::max_point_deviation(original, rel) < 1e-6);
}

TEST_CASE("to_relative is idempotent") {
    const PathData p = parse_path("M10 10 c1 2 3 4 5 6 h3 v-2 z m4 4 l1 1");
    const PathData r1 = to_relative(p);
    const PathData r2 = to_relative(r1);
    CHECK(r1 == r2);
}

TEST_CASE("to_relative preserves geometry on fuzzed paths") {
    std::mt19937_64 rng(7);
    auto coin = [&](double p) { return (rng() >> 11) * 0x1.0p-53 < p; };
    auto num = [&]() { return std::round(((rng() >> 11) * 0x1.0p-53 * 200 - 100) * 100) / 100; };

    for (int iter = 0; iter < 200; ++iter) {
        std::string d = "M" + std::to_string(num()) + " " + std::to_string(num());
        const int segments = 1 + int(rng() % 8);
        for (int s = 0; s < segments; ++s) {
            switch (rng() % 7) {
                case 0: d += " L" + std::to_string(num()) + " " + std::to_string(num()); break;
                case 1: d += " l" + std::to_string(num()) + " " + std::to_string(num()); break;
                case 2:
                    d += " C";
                    for (int i = 0; i < 6; ++i) d += (i ? " " : "") + std::to_string(num());
                    break;
                case 3:
                    d += " q";
                    for (int i = 0; i < 4; ++i) d += (i ? " " : "") + std::to_string(num());
                    break;
                case 4: d += " H" + std::to_string(num()); break;
                case 5: d += " v" + std::to_string(num()); break;
                default:
                    d += coin(0.5) ? " z" : " T" + std::to_string(num()) + " " + std::to_string(num());
            }
        }
        const PathData p = parse_path(d);
        const PathData rel = to_relative(p);
        CHECK(testutil::max_point_deviation(p, rel) < 1e-6);
        for (std::size_t i = 1; i < rel.commands.size(); ++i) {
            const bool abs_non_close =
                rel.commands[i].op != PathOp::Close && rel.commands[i].absolute;
            CHECK_FALSE(abs_non_close);
        }
    }
}

TEST_CASE("serialize/parse round trip preserves the command list") {
    const char* cases[] = {
        "M-14,20 c-5,-6 -5,-15 -1,-22",
        "M-30,1 c16,6 44,17 61,9",
        "M0,0 l10,0 l-10,10 z",
        "M10,10 h5 v3 s1,2 3,4 t2,2 z",
    };
    for (const char* d : cases) {
        const PathData p = parse_path(d);
        const PathData q = parse_path(serialize_path(p));
        CHECK(p == q);
        CHECK(serialize_path(q) == serialize_path(p));
    }
}

TEST_CASE("straight line flattens to its endpoints") {
    const auto polys = flatten(parse_path("M0 0 L10 0"), 1e-3);
    REQUIRE(polys.size() == 1);
    REQUIRE(polys[0].points.size() == 2);
    CHECK(polys[0].points[0] == Vec2{0, 0});
    CHECK(polys[0].points[1] == Vec2{10, 0});
    CHECK_FALSE(polys[0].closed);
}

TEST_CASE("flattened vertices stay within tolerance of the analytic curve") {
    // Dense reference polyline sampled directly from the Bernstein form.
    const Vec2 p0{0, 0}, c1{0, 1}, c2{1, 1}, p3{1, 0};
    std::vector<Vec2> dense;
    for (int i = 0; i <= 1024; ++i)
        dense.push_back(testutil::cubic_at(p0, c1, c2, p3, i / 1024.0));

    auto dist_to_dense = [&](Vec2 p) {
        double best = 1e300;
        for (std::size_t i = 0; i + 1 < dense.size(); ++i) {
            const Vec2 a = dense[i], b = dense[i + 1];
            const double dx = b.x - a.x, dy = b.y - a.y;
            const double len2 = dx * dx + dy * dy;
            double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0;
            t = std::clamp(t, 0.0, 1.0);
            best = std::min(best, std::hypot(a.x + t * dx - p.x, a.y + t * dy - p.y));
        }
        return best;
    };

    const auto polys = flatten(parse_path("M0 0 C0 1 1 1 1 0"), 1e-3);
    REQUIRE(polys.size() == 1);
    CHECK(polys[0].points.size() > 4);
    for (const Vec2& p : polys[0].points) CHECK(dist_to_dense(p) < 1e-3);
}

TEST_CASE("halving the tolerance never decreases the vertex count") {
    const PathData p = parse_path("M0 0 C0 40 100 40 100 0 q-20 30 -40 0 z");
    double tol = 1.0;
    std::size_t prev = 0;
    for (int i = 0; i < 10; ++i) {
        std::size_t count = 0;
        for (const auto& poly : flatten(p, tol)) count += poly.points.size();
        if (i > 0) CHECK(count >= prev);
        prev = count;
        tol /= 2;
    }
}

TEST_CASE("bbox of the unit square") {
    const PathData square = parse_path("M0 0 L1 0 L1 1 L0 1 Z");
    const Rect r = bbox(square, TransformMatrix::identity());
    CHECK(r.x0 == doctest::Approx(0));
    CHECK(r.y0 == doctest::Approx(0));
    CHECK(r.x1 == doctest::Approx(1));
    CHECK(r.y1 == doctest::Approx(1));

    const Rect s = bbox(square, TransformMatrix::scale(2, 2));
    CHECK(s.x1 == doctest::Approx(2));
    CHECK(s.y1 == doctest::Approx(2));
}

TEST_CASE("bbox of a cubic arch matches flattened vertices") {
    const PathData arch = parse_path("M0 0 C0 -10 10 -10 10 0");
    const Rect r = bbox(arch, TransformMatrix::identity());
    // Independent check: min/max over a dense analytic sampling.
    double min_y = 0, max_x = 0;
    for (int i = 0; i <= 1024; ++i) {
        const Vec2 p = testutil::cubic_at({0, 0}, {0, -10}, {10, -10}, {10, 0}, i / 1024.0);
        min_y = std::min(min_y, p.y);
        max_x = std::max(max_x, p.x);
    }
    CHECK(r.y0 == doctest::Approx(min_y).epsilon(1e-3));
    CHECK(r.x1 == doctest::Approx(max_x).epsilon(1e-3));
}

TEST_CASE("arcs parse into cubics that end at the arc endpoint") {
    const PathData p = parse_path("M0 0 A10 10 0 0 1 20 0");
    for (const PathCommand& cmd : p.commands) CHECK(cmd.op != PathOp::Close);
    const PathCommand& last = p.commands.back();
    REQUIRE(last.op == PathOp::Cubic);
    CHECK(last.args[4] == doctest::Approx(20));
    CHECK(last.args[5] == doctest::Approx(0).epsilon(1e-9));

    // The arc's midpoint must lie on the circle through (0,0) and (20,0)
    // with radius 10 centered at (10, 0): sample all flattened vertices.
    for (const auto& poly : flatten(p, 1e-4)) {
        for (const Vec2& v : poly.points) {
            const double r = std::hypot(v.x - 10.0, v.y);
            CHECK(r == doctest::Approx(10).epsilon(1e-3));
        }
    }
}

TEST_CASE("zero-radius arcs degrade to lines") {
    const PathData p = parse_path("M0 0 A0 10 0 0 1 20 0");
    REQUIRE(p.commands.size() == 2);
    CHECK(p.commands[1].op == PathOp::Line);
    CHECK(p.commands[1].args == std::vector<double>{20, 0});
}

TEST_CASE("arc flags may be unseparated") {
    const PathData p = parse_path("M0 0 a10 10 0 0120 0");
    CHECK(p.commands.size() >= 2);
    const PathCommand& last = p.commands.back();
    CHECK(last.args[4] == doctest::Approx(20));
}
