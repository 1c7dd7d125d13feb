#include <doctest.h>

#include "svgdelta/errors.hpp"
#include "svgdelta/transform.hpp"

using namespace svgdelta;

TEST_CASE("matrix form parses verbatim") {
    const TransformMatrix m = parse_transform("matrix(1,0,0,1,0,-9)");
    CHECK(m == TransformMatrix{1, 0, 0, 1, 0, -9});
    CHECK(serialize_transform(m) == "matrix(1, 0, 0, 1, 0, -9)");
}

TEST_CASE("translate with one argument") {
    CHECK(parse_transform("translate(5)") == TransformMatrix{1, 0, 0, 1, 5, 0});
    CHECK(parse_transform("translate(5, -3)") == TransformMatrix{1, 0, 0, 1, 5, -3});
}

TEST_CASE("terms compose left to right") {
    // Hand multiplication: scale(2) * translate(3,0) =
    //   |2 0 0|   |1 0 3|   |2 0 6|
    //   |0 2 0| * |0 1 0| = |0 2 0|
    const TransformMatrix m = parse_transform("scale(2) translate(3,0)");
    CHECK(m == TransformMatrix{2, 0, 0, 2, 6, 0});

    // The other order translates first in document space.
    const TransformMatrix n = parse_transform("translate(3,0) scale(2)");
    CHECK(n == TransformMatrix{2, 0, 0, 2, 3, 0});
}

TEST_CASE("rotate about a point matches the expansion") {
    const TransformMatrix r = parse_transform("rotate(90, 10, 10)");
    const TransformMatrix expected =
        parse_transform("translate(10,10) rotate(90) translate(-10,-10)");
    CHECK(r.a == doctest::Approx(expected.a));
    CHECK(r.b == doctest::Approx(expected.b));
    CHECK(r.e == doctest::Approx(expected.e));
    CHECK(r.f == doctest::Approx(expected.f));

    const Vec2 p = r.apply({10, 0});
    CHECK(p.x == doctest::Approx(20));
    CHECK(p.y == doctest::Approx(10));
}

TEST_CASE("apply uses the SVG point convention") {
    const TransformMatrix m{2, 0, 0, 2, 6, 0};
    const Vec2 p = m.apply({1, 1});
    CHECK(p.x == 8);
    CHECK(p.y == 2);
}

TEST_CASE("bad transforms raise TransformSyntaxError") {
    CHECK_THROWS_AS(parse_transform(""), TransformSyntaxError);
    CHECK_THROWS_AS(parse_transform("matrix(1,2,3)"), TransformSyntaxError);
    CHECK_THROWS_AS(parse_transform("skewX(10)"), TransformSyntaxError);
    CHECK_THROWS_AS(parse_transform("matrix(1,0,0,1,0"), TransformSyntaxError);
    CHECK_THROWS_AS(parse_transform("matrix(1,0,0,1,0,banana)"), TransformSyntaxError);
    CHECK_THROWS_AS(parse_transform("rotate(1,2)"), TransformSyntaxError);
}

TEST_CASE("serialization applies canonical number formatting") {
    const TransformMatrix m = parse_transform("matrix(1.004, 0, 0, 1.02, 292.53, 331.586)");
    CHECK(serialize_transform(m) == "matrix(1, 0, 0, 1.02, 292.53, 331.59)");
}
