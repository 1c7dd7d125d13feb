#pragma once

#include <memory>
#include <string>
#include <vector>

#include "svgdelta/raster.hpp"

namespace svgdelta {

// Semantic alignment backend: maps (prompt, rendered frames) to a score in
// [-1, 1]. Implementations must be safe to call from multiple threads.
class SemanticScorer {
public:
    virtual ~SemanticScorer() = default;
    virtual double score(const std::string& prompt, const std::vector<Framebuffer>& frames) = 0;
};

// Deterministic built-in backend: the score is the Jaccard overlap between
// the prompt's token set and a reference description's token set (lowercase,
// split on non-alphanumerics), mapped to [-1, 1] via 2*J - 1. The frames are
// required but unused.
class StubScorer : public SemanticScorer {
public:
    explicit StubScorer(std::string description) : description_(std::move(description)) {}

    double score(const std::string& prompt, const std::vector<Framebuffer>& frames) override;

    static double similarity(const std::string& prompt, const std::string& description);

private:
    std::string description_;
};

struct HttpScorerOptions {
    double timeout_seconds = 5.0;
    int retries = 0;
};

// Remote backend speaking the scorer protocol:
//   POST /score  {"prompt": str, "frames": [base64 PNG, ...]} -> {"score": float}
// Throws ScorerUnavailableError on connection failure or timeout and
// ScorerProtocolError on malformed responses or out-of-range scores.
class HttpScorer : public SemanticScorer {
public:
    explicit HttpScorer(std::string base_url, HttpScorerOptions options = {});

    double score(const std::string& prompt, const std::vector<Framebuffer>& frames) override;

private:
    std::string base_url_;
    HttpScorerOptions options_;
};

// backend == "stub" selects the built-in scorer, anything else is an HTTP
// base URL.
std::unique_ptr<SemanticScorer> make_scorer(const std::string& backend,
                                            const std::string& description,
                                            HttpScorerOptions options = {});

std::string base64_encode(const std::uint8_t* data, std::size_t size);

}  // namespace svgdelta
