#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace svgdelta {

// Base for all recoverable errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- document parsing ---

struct XmlSyntaxError : Error {
    XmlSyntaxError(const std::string& msg, std::size_t line, std::size_t column)
        : Error(msg + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          line(line), column(column) {}
    std::size_t line;
    std::size_t column;
};

struct DuplicateIdError : Error {
    using Error::Error;
};

struct NonSvgRootError : Error {
    using Error::Error;
};

// --- canonicalization ---

struct UnsupportedUnitError : Error {
    using Error::Error;
};

struct DegenerateViewportError : Error {
    using Error::Error;
};

// --- attribute grammars ---

struct PathSyntaxError : Error {
    PathSyntaxError(const std::string& msg, std::size_t offset)
        : Error(msg + " at offset " + std::to_string(offset)), offset(offset) {}
    std::size_t offset;
};

struct TransformSyntaxError : Error {
    using Error::Error;
};

// --- codec ---

struct NotIsomorphicError : Error {
    using Error::Error;
};

struct NonCanonicalInputError : Error {
    using Error::Error;
};

struct UnknownIdError : Error {
    using Error::Error;
};

struct UndiffableAttrError : Error {
    using Error::Error;
};

// Raised when update frame indices are not exactly 1..T in order.
struct FrameGapError : Error {
    using Error::Error;
};

// --- rasterization and metrics ---

struct UnsupportedFeatureError : Error {
    using Error::Error;
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

// --- scoring ---

struct ScorerUnavailableError : Error {
    using Error::Error;
};

struct ScorerProtocolError : Error {
    using Error::Error;
};

struct NonFiniteLogprobError : Error {
    using Error::Error;
};

}  // namespace svgdelta
