#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "svgdelta/transform.hpp"

namespace svgdelta {

// Path opcodes after parsing. Arcs are approximated by cubics at parse time,
// so 'a' never appears in a PathData.
enum class PathOp : char {
    Move = 'm',        // x y
    Line = 'l',        // x y
    HLine = 'h',       // x
    VLine = 'v',       // y
    Cubic = 'c',       // x1 y1 x2 y2 x y
    SmoothCubic = 's', // x2 y2 x y
    Quad = 'q',        // x1 y1 x y
    SmoothQuad = 't',  // x y
    Close = 'z',       //
};

std::size_t path_op_arity(PathOp op);

struct PathCommand {
    PathOp op;
    bool absolute = false;
    std::vector<double> args;
};

inline bool operator==(const PathCommand& a, const PathCommand& b) {
    return a.op == b.op && a.absolute == b.absolute && a.args == b.args;
}

struct PathData {
    std::vector<PathCommand> commands;
};

inline bool operator==(const PathData& a, const PathData& b) { return a.commands == b.commands; }

struct Polyline {
    std::vector<Vec2> points;
    bool closed = false;
};

// Parses an SVG path data string. Implicit command repetitions are expanded
// into explicit commands; an implicit repeat after moveto becomes lineto.
// The leading moveto is normalized to absolute. Arc segments are converted
// to cubic approximations (<= 90 degrees each). Throws PathSyntaxError with
// the byte offset of the failure.
PathData parse_path(std::string_view d);

// Rewrites every command after the initial absolute moveto into its relative
// form. Geometry is unchanged. Idempotent.
PathData to_relative(const PathData& path);

// Converts every command to absolute form (used by flattening and tests).
PathData to_absolute(const PathData& path);

// Canonical serialization: opcode letter glued to its first number, comma
// inside coordinate pairs, single space between pairs and commands, numbers
// through format_number.  e.g. "M-14,20 c-5,-6 -5,-15 -1,-22 z"
std::string serialize_path(const PathData& path);

// Adaptive flattening: subdivides curves until the control polygon deviates
// from the chord by at most `tolerance`. Emitted vertices lie on the curve.
// One Polyline per subpath.
std::vector<Polyline> flatten(const PathData& path, double tolerance);

// Axis-aligned bounding box of the transformed path, computed from vertices
// flattened at tolerance 1e-3.
Rect bbox(const PathData& path, const TransformMatrix& m);

}  // namespace svgdelta
