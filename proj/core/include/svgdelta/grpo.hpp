#pragma once

#include <string>
#include <vector>

#include "svgdelta/reward.hpp"

namespace svgdelta {

// Group-normalized advantages: (r_i - mean) / (std + 1e-8), population std.
// Requires a group of at least 2.
std::vector<double> grpo_advantages(const std::vector<double>& rewards);

struct GrpoOptions {
    double clip_epsilon = 0.2;
    double beta_kl = 0.01;
};

struct GrpoLossTerms {
    double surrogate = 0;    // mean_i min(rho_i * A_i, clip(rho_i) * A_i)
    double kl_estimate = 0;  // mean_i (rho_i - 1 - log rho_i), nonnegative
    double loss = 0;         // -surrogate + beta * kl (minimized)
    std::vector<double> ratios;
};

// Sequence-level clipped surrogate. The logprob arguments are summed
// per-candidate sequence log-probabilities; rho_i = exp(new_i - old_i).
// Throws NonFiniteLogprobError for non-finite inputs.
GrpoLossTerms grpo_loss(const std::vector<double>& logprob_new_sums,
                        const std::vector<double>& logprob_old_sums,
                        const std::vector<double>& advantages, const GrpoOptions& opts);

// One candidate in a GRPO group.
struct Candidate {
    std::string name;
    std::string stream_text;
    std::vector<double> logprob_new;  // per-token
    std::vector<double> logprob_old;
    RewardReport reward;
};

struct GrpoBatch {
    std::vector<Candidate> group;
    std::vector<double> advantages;
    double clip_epsilon = 0.2;
    double beta_kl = 0.01;
    double surrogate = 0;
    double kl_estimate = 0;
    double loss = 0;
};

// Advantages from the candidates' total rewards, then the surrogate loss
// from their summed token logprobs. Requires G >= 2 with rewards filled in.
GrpoBatch evaluate_group(std::vector<Candidate> group, const GrpoOptions& opts);

}  // namespace svgdelta
