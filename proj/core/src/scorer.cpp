#include "svgdelta/scorer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "svgdelta/errors.hpp"
#include "svgdelta/png_io.hpp"

namespace svgdelta {

namespace {

std::set<std::string> token_set(const std::string& text) {
    std::set<std::string> tokens;
    std::string current;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (!current.empty()) {
            tokens.insert(current);
            current.clear();
        }
    }
    if (!current.empty()) tokens.insert(current);
    return tokens;
}

}  // namespace

double StubScorer::similarity(const std::string& prompt, const std::string& description) {
    const std::set<std::string> a = token_set(prompt);
    const std::set<std::string> b = token_set(description);
    if (a.empty() && b.empty()) return 1.0;

    std::size_t intersection = 0;
    for (const std::string& t : a) intersection += b.count(t);
    const std::size_t unions = a.size() + b.size() - intersection;
    const double jaccard = unions ? static_cast<double>(intersection) / unions : 0.0;
    return 2.0 * jaccard - 1.0;
}

double StubScorer::score(const std::string& prompt, const std::vector<Framebuffer>& frames) {
    if (prompt.empty() || frames.empty())
        throw Error("semantic scoring requires a prompt and at least one frame");
    return similarity(prompt, description_);
}

std::string base64_encode(const std::uint8_t* data, std::size_t size) {
    static const char* kAlphabet =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
    std::string out;
    out.reserve((size + 2) / 3 * 4);
    for (std::size_t i = 0; i < size; i += 3) {
        std::uint32_t v = static_cast<std::uint32_t>(data[i]) << 16;
        if (i + 1 < size) v |= static_cast<std::uint32_t>(data[i + 1]) << 8;
        if (i + 2 < size) v |= data[i + 2];
        out += kAlphabet[(v >> 18) & 0x3F];
        out += kAlphabet[(v >> 12) & 0x3F];
        out += (i + 1 < size) ? kAlphabet[(v >> 6) & 0x3F] : '=';
        out += (i + 2 < size) ? kAlphabet[v & 0x3F] : '=';
    }
    return out;
}

HttpScorer::HttpScorer(std::string base_url, HttpScorerOptions options)
    : base_url_(std::move(base_url)), options_(options) {}

double HttpScorer::score(const std::string& prompt, const std::vector<Framebuffer>& frames) {
    if (prompt.empty() || frames.empty())
        throw Error("semantic scoring requires a prompt and at least one frame");

    nlohmann::json body;
    body["prompt"] = prompt;
    auto& encoded = body["frames"] = nlohmann::json::array();
    for (const Framebuffer& fb : frames) {
        const std::vector<std::uint8_t> png = encode_png(fb);
        encoded.push_back(base64_encode(png.data(), png.size()));
    }
    const std::string payload = body.dump();

    httplib::Client client(base_url_);
    const auto seconds = static_cast<time_t>(options_.timeout_seconds);
    const auto micros =
        static_cast<time_t>((options_.timeout_seconds - static_cast<double>(seconds)) * 1e6);
    client.set_connection_timeout(seconds, micros);
    client.set_read_timeout(seconds, micros);
    client.set_write_timeout(seconds, micros);

    httplib::Result response;
    for (int attempt = 0; attempt <= options_.retries; ++attempt) {
        response = client.Post("/score", payload, "application/json");
        if (response) break;
    }
    if (!response)
        throw ScorerUnavailableError("scorer at " + base_url_ + " unreachable: " +
                                     httplib::to_string(response.error()));
    if (response->status != 200)
        throw ScorerProtocolError("scorer returned HTTP " + std::to_string(response->status));

    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(response->body);
    } catch (const nlohmann::json::exception& e) {
        throw ScorerProtocolError(std::string("scorer response is not JSON: ") + e.what());
    }
    if (!parsed.is_object() || !parsed.contains("score") || !parsed["score"].is_number())
        throw ScorerProtocolError("scorer response lacks a numeric \"score\" field");
    const double s = parsed["score"].get<double>();
    if (!std::isfinite(s) || s < -1.0 || s > 1.0)
        throw ScorerProtocolError("scorer returned out-of-range score " + std::to_string(s));
    return s;
}

std::unique_ptr<SemanticScorer> make_scorer(const std::string& backend,
                                            const std::string& description,
                                            HttpScorerOptions options) {
    if (backend.empty() || backend == "stub")
        return std::make_unique<StubScorer>(description);
    return std::make_unique<HttpScorer>(backend, options);
}

}  // namespace svgdelta
