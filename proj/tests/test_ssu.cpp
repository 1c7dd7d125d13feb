#include <doctest.h>

#include "svgdelta/corpus.hpp"
#include "svgdelta/errors.hpp"
#include "svgdelta/ssu.hpp"
#include "test_util.hpp"

using namespace svgdelta;

namespace {

SvgDocument canon(const std::string& body) {
    return canonicalize(parse_svg("<svg width=\"500\" height=\"500\">" + body + "</svg>"));
}

FrameSequence two_frames(const SvgDocument& a, const SvgDocument& b) {
    FrameSequence seq;
    seq.fps = 12;
    seq.viewport_w = a.viewport_w;
    seq.viewport_h = a.viewport_h;
    seq.frames = {a, b};
    return seq;
}

// set_attr appends new names; keep the node canonical for extract().
void set_attr_sorted(SvgNode& node, std::string_view name, std::string value) {
    node.set_attr(name, std::move(value));
    std::sort(node.attributes.begin(), node.attributes.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
}

}  // namespace

TEST_CASE("identical frames produce empty updates") {
    const SvgDocument s0 = canon("<rect width=\"10\" height=\"10\" fill=\"red\"/>");
    FrameSequence seq;
    seq.viewport_w = seq.viewport_h = 500;
    seq.frames = {s0, s0, s0, s0};
    const UpdateSequence u = extract(seq);
    REQUIRE(u.deltas.size() == 3);
    for (const UpdateSet& d : u.deltas) {
        CHECK(d.updates.empty());
    }
    CHECK(u.deltas[0].t == 1);
    CHECK(u.deltas[2].t == 3);
}

TEST_CASE("a transform nudge extracts as one update") {
    SvgDocument f0 = canon(
        "<g id=\"2\" transform=\"matrix(1,0,0,1,0,-9)\"><rect width=\"4\" height=\"4\"/></g>");
    SvgDocument f1 = f0;
    f1.find_by_id(2)->set_attr("transform", "matrix(1, 0, 0, 1, 0, -8.92)");

    const UpdateSequence u = extract(two_frames(f0, f1));
    REQUIRE(u.deltas.size() == 1);
    REQUIRE(u.deltas[0].updates.size() == 1);
    const AttrUpdate& up = u.deltas[0].updates[0];
    CHECK(up.id == 2);
    CHECK(up.attr == "transform");
    CHECK(up.value == "matrix(1, 0, 0, 1, 0, -8.92)");
}

TEST_CASE("extract equals the naive per-node diff over corpus items") {
    for (int index = 0; index < 4; ++index) {
        const CorpusItem item = generate_item({.seed = 99, .count = 4}, index);
        const UpdateSequence u = extract(item.seq);
        REQUIRE(u.deltas.size() == item.seq.frames.size() - 1);
        for (std::size_t t = 1; t < item.seq.frames.size(); ++t) {
            const auto expected = testutil::naive_diff(item.seq.frames[t - 1], item.seq.frames[t]);
            std::vector<testutil::NaiveDiffEntry> actual;
            for (const AttrUpdate& up : u.deltas[t - 1].updates)
                actual.push_back({up.id, up.attr, up.value});
            std::sort(actual.begin(), actual.end());
            CHECK(actual == expected);
        }
    }
}

TEST_CASE("extract rejects non-isomorphic sequences with a report") {
    const SvgDocument a = canon("<rect width=\"1\" height=\"1\"/>");
    const SvgDocument b = canon("<rect width=\"1\" height=\"1\"/><circle r=\"2\"/>");
    try {
        extract(two_frames(a, b));
        FAIL("expected NotIsomorphicError");
    } catch (const NotIsomorphicError& e) {
        CHECK(std::string(e.what()).find("child count") != std::string::npos);
    }
}

TEST_CASE("extract rejects non-canonical input") {
    SvgDocument a = canon("<rect width=\"1\" height=\"1\"/>");
    SvgDocument b = a;
    b.root.children[0].set_attr("width", "2.000");  // not NumberFormat
    CHECK_THROWS_AS(extract(two_frames(a, b)), NonCanonicalInputError);

    SvgDocument c = a;
    c.root.children[0].id.reset();
    c.rebuild_id_index();
    CHECK_THROWS_AS(extract(two_frames(c, c)), NonCanonicalInputError);
}

TEST_CASE("a static-node change cannot be encoded") {
    SvgDocument a = canon("<defs custom=\"1\"/><rect width=\"1\" height=\"1\"/>");
    SvgDocument b = a;
    b.root.children[0].set_attr("custom", "2");
    CHECK_THROWS_AS(extract(two_frames(a, b)), UndiffableAttrError);
}

TEST_CASE("attribute addition and removal round trip through the sentinel") {
    SvgDocument f0 = canon("<rect width=\"4\" height=\"4\"/>");
    SvgDocument f1 = f0;
    set_attr_sorted(*f1.find_by_id(0), "opacity", "0.5");
    SvgDocument f2 = f0;  // opacity removed again

    FrameSequence seq;
    seq.viewport_w = seq.viewport_h = 500;
    seq.frames = {f0, f1, f2};
    const UpdateSequence u = extract(seq);
    REQUIRE(u.deltas[0].updates.size() == 1);
    CHECK(u.deltas[0].updates[0].value == "0.5");
    REQUIRE(u.deltas[1].updates.size() == 1);
    CHECK(u.deltas[1].updates[0].is_removal());

    const FrameSequence back = apply(u);
    CHECK(back.frames[1].find_by_id(0)->find_attr("opacity") != nullptr);
    CHECK(back.frames[2].find_by_id(0)->find_attr("opacity") == nullptr);
}

TEST_CASE("empty deltas reproduce identical frames") {
    const SvgDocument s0 = canon("<circle r=\"5\" fill=\"navy\"/>");
    UpdateSequence u;
    u.initial = s0;
    u.deltas = {{1, {}}, {2, {}}, {3, {}}};
    const FrameSequence seq = apply(u);
    REQUIRE(seq.frames.size() == 4);
    for (const SvgDocument& f : seq.frames) CHECK(trees_equal(f.root, s0.root));
}

TEST_CASE("apply(extract(f)) reproduces every corpus sequence") {
    for (int index = 0; index < 4; ++index) {
        const CorpusItem item = generate_item({.seed = 42, .count = 4}, index);
        const FrameSequence back = apply(extract(item.seq));
        REQUIRE(back.frames.size() == item.seq.frames.size());
        for (std::size_t t = 0; t < back.frames.size(); ++t)
            CHECK(trees_equal(back.frames[t].root, item.seq.frames[t].root));
    }
}

TEST_CASE("extract(apply(u)) reproduces the update sequence") {
    const CorpusItem item = generate_item({.seed = 17, .count = 1}, 0);
    const UpdateSequence u = extract(item.seq);
    const UpdateSequence round = extract(apply(u));
    REQUIRE(round.deltas.size() == u.deltas.size());
    for (std::size_t i = 0; i < u.deltas.size(); ++i) CHECK(round.deltas[i] == u.deltas[i]);
}

TEST_CASE("apply rejects unknown ids") {
    const SvgDocument s0 = canon("<rect width=\"1\" height=\"1\"/>");
    UpdateSequence u;
    u.initial = s0;
    u.deltas = {{1, {{99, "fill", "red"}}}};
    CHECK_THROWS_AS(apply(u), UnknownIdError);
}

TEST_CASE("apply rejects non-diffable attributes and bad frame indices") {
    const SvgDocument s0 = canon("<rect width=\"1\" height=\"1\"/>");
    {
        UpdateSequence u;
        u.initial = s0;
        u.deltas = {{1, {{0, "class", "x"}}}};
        CHECK_THROWS_AS(apply(u), UndiffableAttrError);
    }
    {
        UpdateSequence u;
        u.initial = s0;
        u.deltas = {{2, {}}};  // must start at 1
        CHECK_THROWS_AS(apply(u), FrameGapError);
    }
    {
        UpdateSequence u;
        u.initial = s0;
        u.deltas = {{1, {}}, {3, {}}};  // gap
        CHECK_THROWS_AS(apply(u), FrameGapError);
    }
}

TEST_CASE("no extracted update is removable (minimality)") {
    const CorpusItem item = generate_item({.seed = 8, .count = 1, .updates = 4}, 0);
    const UpdateSequence u = extract(item.seq);
    for (std::size_t d = 0; d < u.deltas.size(); ++d) {
        for (std::size_t k = 0; k < u.deltas[d].updates.size(); ++k) {
            UpdateSequence mutated = u;
            mutated.deltas[d].updates.erase(mutated.deltas[d].updates.begin() + k);
            const FrameSequence back = apply(mutated);
            bool all_equal = true;
            for (std::size_t t = 0; t < back.frames.size(); ++t)
                if (!trees_equal(back.frames[t].root, item.seq.frames[t].root)) all_equal = false;
            CHECK_FALSE(all_equal);
        }
    }
}

TEST_CASE("emit_stream matches the documented layout") {
    SvgDocument f0 = canon(
        "<g id=\"2\" transform=\"matrix(1,0,0,1,0,-9)\"><rect width=\"4\" height=\"4\"/></g>");
    SvgDocument f1 = f0;
    f1.find_by_id(2)->set_attr("transform", "matrix(1, 0, 0, 1, 0, -8.92)");
    const UpdateSequence u = extract(two_frames(f0, f1));
    CHECK(emit_stream(u) == "<|time=1|>\n  <|ID=2|> transform: matrix(1, 0, 0, 1, 0, -8.92)\n");
}

TEST_CASE("empty frames emit a bare header") {
    UpdateSequence u;
    u.initial = canon("<rect width=\"1\" height=\"1\"/>");
    u.deltas = {{1, {}}, {2, {{0, "fill", "red"}}}};
    CHECK(emit_stream(u) == "<|time=1|>\n<|time=2|>\n  <|ID=0|> fill: red\n");
}

TEST_CASE("parse_stream(emit_stream(u)) is the identity over corpus items") {
    for (int index = 0; index < 3; ++index) {
        const CorpusItem item = generate_item({.seed = 12, .count = 3}, index);
        const UpdateSequence u = extract(item.seq);
        const std::string text = emit_stream(u);
        const ParseStreamResult r = parse_stream(text, u.initial, u.update_count(), u.fps);
        REQUIRE(r.ok());
        REQUIRE(r.sequence->deltas.size() == u.deltas.size());
        for (std::size_t i = 0; i < u.deltas.size(); ++i)
            CHECK(r.sequence->deltas[i] == u.deltas[i]);
        // Byte-exact re-emission.
        CHECK(emit_stream(*r.sequence) == text);
    }
}

TEST_CASE("parse_stream classifies failures") {
    const SvgDocument s0 = canon("<rect width=\"1\" height=\"1\"/>");

    SUBCASE("frame count") {
        const auto r = parse_stream("<|time=1|>\n", s0, 24);
        REQUIRE_FALSE(r.ok());
        CHECK(*r.failure == StreamFailure::FrameCount);
    }
    SUBCASE("unknown id") {
        const auto r = parse_stream("<|time=1|>\n  <|ID=7|> fill: red\n", s0, 1);
        REQUIRE_FALSE(r.ok());
        CHECK(*r.failure == StreamFailure::UnknownId);
        CHECK(r.diagnostic.find("7") != std::string::npos);
    }
    SUBCASE("undiffable attribute") {
        const auto r = parse_stream("<|time=1|>\n  <|ID=0|> class: a\n", s0, 1);
        REQUIRE_FALSE(r.ok());
        CHECK(*r.failure == StreamFailure::UndiffableAttr);
    }
    SUBCASE("syntax") {
        const auto r = parse_stream("<|time=1|\n", s0, 1);
        REQUIRE_FALSE(r.ok());
        CHECK(*r.failure == StreamFailure::Syntax);
    }
    SUBCASE("duplicate update") {
        const auto r =
            parse_stream("<|time=1|>\n  <|ID=0|> fill: red\n  <|ID=0|> fill: blue\n", s0, 1);
        REQUIRE_FALSE(r.ok());
        CHECK(*r.failure == StreamFailure::Syntax);
    }
    SUBCASE("missing trailing newline") {
        const auto r = parse_stream("<|time=1|>", s0, 1);
        REQUIRE_FALSE(r.ok());
        CHECK(*r.failure == StreamFailure::Syntax);
    }
    SUBCASE("empty stream is T=0") {
        const auto r = parse_stream("", s0, 0);
        REQUIRE(r.ok());
        CHECK(r.sequence->deltas.empty());
    }
}

TEST_CASE("well-formed 24-frame stream parses with T=24") {
    const SvgDocument s0 = canon("<rect width=\"1\" height=\"1\"/>");
    std::string text;
    for (int t = 1; t <= 24; ++t) {
        text += "<|time=" + std::to_string(t) + "|>\n";
        if (t % 2) text += "  <|ID=0|> opacity: 0." + std::to_string(t) + "\n";
    }
    const auto r = parse_stream(text, s0, 24);
    REQUIRE(r.ok());
    CHECK(r.sequence->update_count() == 24);
}

TEST_CASE("parse_stream normalizes entry order within a frame") {
    SvgDocument s0 = canon("<rect width=\"1\" height=\"1\"/><circle r=\"1\"/>");
    const auto r =
        parse_stream("<|time=1|>\n  <|ID=1|> fill: red\n  <|ID=0|> fill: blue\n", s0, 1);
    REQUIRE(r.ok());
    CHECK(r.sequence->deltas[0].updates[0].id == 0);
    CHECK(r.sequence->deltas[0].updates[1].id == 1);
}
