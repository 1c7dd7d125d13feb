#include <doctest.h>

#include "svgdelta/corpus.hpp"
#include "svgdelta/ssu.hpp"

using namespace svgdelta;

namespace {

std::size_t count_dynamic(const SvgNode& node) {
    std::size_t n = is_dynamic_tag(node.tag) ? 1 : 0;
    for (const SvgNode& child : node.children) n += count_dynamic(child);
    return n;
}

}  // namespace

TEST_CASE("same seed gives identical bytes") {
    const CorpusItem a = generate_item({.seed = 42, .count = 1}, 3);
    const CorpusItem b = generate_item({.seed = 42, .count = 1}, 3);
    REQUIRE(a.seq.frames.size() == b.seq.frames.size());
    for (std::size_t t = 0; t < a.seq.frames.size(); ++t)
        CHECK(serialize_svg(a.seq.frames[t]) == serialize_svg(b.seq.frames[t]));
    CHECK(a.description == b.description);

    const CorpusItem c = generate_item({.seed = 43, .count = 1}, 3);
    CHECK(serialize_svg(a.seq.frames[0]) != serialize_svg(c.seq.frames[0]));
}

TEST_CASE("items meet the structural contract") {
    for (int index = 0; index < 5; ++index) {
        const CorpusItem item = generate_item({.seed = 42, .count = 5}, index);
        CHECK(item.seq.frames.size() == 25);
        CHECK(item.seq.fps == 12);
        CHECK(count_dynamic(item.seq.frames[0].root) >= 30);
        for (std::size_t t = 1; t < item.seq.frames.size(); ++t)
            REQUIRE(isomorphism_check(item.seq.frames[t - 1], item.seq.frames[t]).isomorphic);
        CHECK_FALSE(item.description.empty());
    }
}

TEST_CASE("frames are canonical by construction") {
    const CorpusItem item = generate_item({.seed = 9, .count = 1, .updates = 3}, 0);
    for (const SvgDocument& frame : item.seq.frames) {
        const SvgDocument again = canonicalize(frame);
        CHECK(serialize_svg(again) == serialize_svg(frame));
    }
}

TEST_CASE("every item animates at least one path d attribute") {
    for (int index = 0; index < 6; ++index) {
        const CorpusItem item = generate_item({.seed = 42, .count = 6}, index);
        const UpdateSequence u = extract(item.seq);
        bool d_update = false;
        for (const UpdateSet& delta : u.deltas)
            for (const AttrUpdate& up : delta.updates)
                if (up.attr == "d") d_update = true;
        CHECK(d_update);
    }
}

TEST_CASE("hold frames produce empty deltas") {
    int items_with_holds = 0;
    for (int index = 0; index < 6; ++index) {
        const CorpusItem item = generate_item({.seed = 42, .count = 6}, index);
        const UpdateSequence u = extract(item.seq);
        for (const UpdateSet& delta : u.deltas)
            if (delta.updates.empty()) {
                ++items_with_holds;
                break;
            }
    }
    CHECK(items_with_holds >= 4);
}

TEST_CASE("transform updates dominate over path morphs roughly 70/30") {
    std::size_t transform_updates = 0, d_updates = 0;
    for (int index = 0; index < 10; ++index) {
        const CorpusItem item = generate_item({.seed = 42, .count = 10}, index);
        const UpdateSequence u = extract(item.seq);
        for (const UpdateSet& delta : u.deltas) {
            for (const AttrUpdate& up : delta.updates) {
                if (up.attr == "transform") ++transform_updates;
                if (up.attr == "d") ++d_updates;
            }
        }
    }
    REQUIRE(transform_updates + d_updates > 0);
    const double d_share =
        static_cast<double>(d_updates) / static_cast<double>(transform_updates + d_updates);
    CHECK(d_share > 0.15);
    CHECK(d_share < 0.45);
}
