#pragma once

#include <cstdint>
#include <string>

#include "svgdelta/svg_model.hpp"

namespace svgdelta {

// Synthetic animation generator used for tests, benchmarks and the
// gen-corpus subcommand. Items are canonical frame sequences exercising
// group transform drift, path morphing, opacity fades, fill switches and
// hold (empty-delta) frames.
struct CorpusOptions {
    std::uint64_t seed = 42;
    int count = 50;
    std::size_t updates = 24;           // T; frame count is T+1
    std::size_t min_dynamic_nodes = 30;
    int fps = 12;
    double viewport = 500;
};

struct CorpusItem {
    FrameSequence seq;
    std::string description;  // reference text for the stub scorer
};

// Deterministic in (options.seed, index); items are independent of
// options.count and of each other.
CorpusItem generate_item(const CorpusOptions& options, int index);

}  // namespace svgdelta
