#include "svgdelta/grpo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "svgdelta/errors.hpp"

namespace svgdelta {

std::vector<double> grpo_advantages(const std::vector<double>& rewards) {
    if (rewards.size() < 2)
        throw Error("advantage normalization needs a group of at least 2, got " +
                    std::to_string(rewards.size()));
    const double n = static_cast<double>(rewards.size());
    const double mean = std::accumulate(rewards.begin(), rewards.end(), 0.0) / n;
    double var = 0;
    for (double r : rewards) var += (r - mean) * (r - mean);
    const double std_dev = std::sqrt(var / n);

    std::vector<double> advantages(rewards.size());
    for (std::size_t i = 0; i < rewards.size(); ++i)
        advantages[i] = (rewards[i] - mean) / (std_dev + 1e-8);
    return advantages;
}

GrpoLossTerms grpo_loss(const std::vector<double>& logprob_new_sums,
                        const std::vector<double>& logprob_old_sums,
                        const std::vector<double>& advantages, const GrpoOptions& opts) {
    const std::size_t n = advantages.size();
    if (n == 0) throw Error("empty GRPO group");
    if (logprob_new_sums.size() != n || logprob_old_sums.size() != n)
        throw Error("logprob and advantage lists must have equal length");
    if (opts.clip_epsilon <= 0) throw Error("clip epsilon must be positive");

    GrpoLossTerms terms;
    terms.ratios.resize(n);
    double surrogate = 0, kl = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(logprob_new_sums[i]) || !std::isfinite(logprob_old_sums[i]))
            throw NonFiniteLogprobError("candidate " + std::to_string(i) +
                                        " has a non-finite log-probability");
        const double rho = std::exp(logprob_new_sums[i] - logprob_old_sums[i]);
        if (!std::isfinite(rho) || rho <= 0)
            throw NonFiniteLogprobError("candidate " + std::to_string(i) +
                                        " has a degenerate probability ratio");
        terms.ratios[i] = rho;
        const double clipped = std::clamp(rho, 1 - opts.clip_epsilon, 1 + opts.clip_epsilon);
        surrogate += std::min(rho * advantages[i], clipped * advantages[i]);
        kl += rho - 1 - std::log(rho);
    }
    terms.surrogate = surrogate / static_cast<double>(n);
    terms.kl_estimate = kl / static_cast<double>(n);
    terms.loss = -terms.surrogate + opts.beta_kl * terms.kl_estimate;
    return terms;
}

GrpoBatch evaluate_group(std::vector<Candidate> group, const GrpoOptions& opts) {
    if (group.size() < 2)
        throw Error("a GRPO group needs at least 2 candidates, got " + std::to_string(group.size()));

    std::vector<double> totals, new_sums, old_sums;
    totals.reserve(group.size());
    for (const Candidate& c : group) {
        if (c.logprob_new.size() != c.logprob_old.size())
            throw Error("candidate " + c.name + " has mismatched logprob sequence lengths");
        totals.push_back(c.reward.total);
        new_sums.push_back(std::accumulate(c.logprob_new.begin(), c.logprob_new.end(), 0.0));
        old_sums.push_back(std::accumulate(c.logprob_old.begin(), c.logprob_old.end(), 0.0));
    }

    GrpoBatch batch;
    batch.group = std::move(group);
    batch.advantages = grpo_advantages(totals);
    batch.clip_epsilon = opts.clip_epsilon;
    batch.beta_kl = opts.beta_kl;
    const GrpoLossTerms terms = grpo_loss(new_sums, old_sums, batch.advantages, opts);
    batch.surrogate = terms.surrogate;
    batch.kl_estimate = terms.kl_estimate;
    batch.loss = terms.loss;
    return batch;
}

}  // namespace svgdelta
