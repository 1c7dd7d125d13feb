#pragma once

namespace svgdelta {
struct SvgNode;
namespace detail {

// User-space dimensions and viewBox origin of a root <svg> node.
struct ViewportInfo {
    double w = 0, h = 0;
    double min_x = 0, min_y = 0;
    bool resolved = false;
};

// Throws UnsupportedUnitError for non-px lengths; `resolved` is false when
// neither width/height nor viewBox are present.
ViewportInfo resolve_viewport(const SvgNode& root);

}  // namespace detail
}  // namespace svgdelta
