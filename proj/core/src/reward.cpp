#include "svgdelta/reward.hpp"

#include "svgdelta/errors.hpp"
#include "svgdelta/ssu.hpp"

namespace svgdelta {

RewardReport hybrid_reward(const std::string& prompt, std::string_view stream_text,
                           const SvgDocument& s0, std::size_t expected_updates,
                           RewardWeights weights, SemanticScorer& scorer,
                           int render_w, int render_h) {
    if (weights.align < 0 || weights.fmt < 0)
        throw Error("reward weights must be nonnegative");

    RewardReport report;
    report.lambda_align = weights.align;
    report.lambda_fmt = weights.fmt;
    report.verdict = check_format(stream_text, s0, expected_updates);
    report.r_fmt = report.verdict.reward;

    if (report.r_fmt == 1) {
        ParseStreamResult parsed = parse_stream(stream_text, s0, expected_updates);
        const std::vector<Framebuffer> frames =
            render_sequence(*parsed.sequence, render_w, render_h);
        report.r_align = scorer.score(prompt, frames);
    } else {
        report.r_align = -1.0;
    }

    report.total = report.lambda_align * report.r_align + report.lambda_fmt * report.r_fmt;
    return report;
}

}  // namespace svgdelta
