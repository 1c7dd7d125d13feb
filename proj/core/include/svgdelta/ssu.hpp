#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svgdelta/svg_model.hpp"

namespace svgdelta {

// Value marking an attribute removal in an update stream.
inline constexpr std::string_view kRemovalSentinel = "~";

// One attribute differential: node `id`'s attribute `attr` takes `value` at
// this frame (or is removed when value is the sentinel).
struct AttrUpdate {
    std::int64_t id = 0;
    std::string attr;
    std::string value;

    bool is_removal() const { return value == kRemovalSentinel; }
};

inline bool operator==(const AttrUpdate& a, const AttrUpdate& b) {
    return a.id == b.id && a.attr == b.attr && a.value == b.value;
}

// The sparse update of one frame, sorted by (id, attr).
struct UpdateSet {
    std::size_t t = 1;  // frame index, >= 1
    std::vector<AttrUpdate> updates;
};

inline bool operator==(const UpdateSet& a, const UpdateSet& b) {
    return a.t == b.t && a.updates == b.updates;
}

// A full animation: base document plus updates for frames 1..T.
struct UpdateSequence {
    SvgDocument initial;
    std::vector<UpdateSet> deltas;
    int fps = 12;

    std::size_t update_count() const { return deltas.size(); }
};

// Computes the sparse updates of a canonical, isomorphic frame sequence.
// Inverse of apply. Throws NotIsomorphicError / NonCanonicalInputError /
// UndiffableAttrError (a non-diffable attribute changed between frames).
UpdateSequence extract(const FrameSequence& seq);

// Reconstructs the full frame sequence from the base document and updates.
// Throws UnknownIdError / UndiffableAttrError / FrameGapError.
FrameSequence apply(const UpdateSequence& u);

// Serializes an update sequence into the wire format (UTF-8, LF newlines):
//
//   <|time=1|>
//     <|ID=2|> transform: matrix(1, 0, 0, 1, 0, -9)
//   <|time=2|>
//   ...
//
// Entry lines are indented two spaces. Deterministic; T=0 yields "".
std::string emit_stream(const UpdateSequence& u);

enum class StreamFailure {
    Syntax,
    FrameCount,
    UnknownId,
    UndiffableAttr,
};

std::string_view stream_failure_name(StreamFailure f);

// Outcome of parsing untrusted stream text. Exactly one of `sequence` or
// `failure` is set.
struct ParseStreamResult {
    std::optional<UpdateSequence> sequence;
    std::optional<StreamFailure> failure;
    std::string diagnostic;

    bool ok() const { return sequence.has_value(); }
};

// Parses stream text against a base document and an expected update count.
// Never throws for bad input; failures come back as classified diagnostics.
// Entries are normalized to (id, attr) order; duplicate (id, attr) pairs in
// a frame are a syntax failure. Values are kept verbatim.
ParseStreamResult parse_stream(std::string_view stream_text, const SvgDocument& s0,
                               std::size_t expected_updates, int fps = 12);

namespace wire {

// Wire-grammar scan shared by parse_stream and the format validator.
struct Entry {
    std::int64_t id = 0;
    std::string attr;
    std::string value;
    std::size_t line = 0;
};

struct Frame {
    std::int64_t t = 0;
    std::vector<Entry> entries;
    std::size_t line = 0;
};

struct ScanResult {
    bool ok = true;
    std::vector<Frame> frames;
    std::string diagnostic;
    std::size_t line = 0;  // 1-based line of the failure
};

ScanResult scan_stream(std::string_view text);

}  // namespace wire

// --- token statistics ---

struct TokenStats {
    std::size_t naive_tokens = 0;    // sum over all frames of full-document tokens
    std::size_t ssu_tokens = 0;      // base document + stream tokens
    std::size_t stream_tokens = 0;
    double ratio = 1.0;              // naive / ssu
    double diff_fraction = 0.0;      // stream / ssu
    double unchanged_attr_fraction = 1.0;
};

// Deterministic whitespace/punctuation tokenizer documented in the README:
// control tags <|...|> count as one token; commas and colons are single
// tokens; numbers (with an adjacent sign) are single tokens; remaining
// non-space runs are single tokens.
std::size_t count_tokens(std::string_view text);

TokenStats token_stats(const FrameSequence& seq);

}  // namespace svgdelta
