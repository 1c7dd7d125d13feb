#pragma once

#include <string>
#include <string_view>

#include "svgdelta/scorer.hpp"
#include "svgdelta/svg_model.hpp"
#include "svgdelta/validator.hpp"

namespace svgdelta {

struct RewardWeights {
    double align = 1.0;
    double fmt = 1.0;
};

// Hybrid reward of one candidate: total = lambda_align * r_align +
// lambda_fmt * r_fmt.
struct RewardReport {
    double r_align = -1.0;
    int r_fmt = -1;
    double lambda_align = 1.0;
    double lambda_fmt = 1.0;
    double total = 0.0;
    ValidityVerdict verdict;
};

// Runs the format check; when it passes, reconstructs and renders the
// candidate and asks the scorer for the alignment reward. Invalid candidates
// get r_align = -1 without a scorer call (an unrenderable candidate has no
// video to score).
RewardReport hybrid_reward(const std::string& prompt, std::string_view stream_text,
                           const SvgDocument& s0, std::size_t expected_updates,
                           RewardWeights weights, SemanticScorer& scorer,
                           int render_w = 500, int render_h = 500);

}  // namespace svgdelta
