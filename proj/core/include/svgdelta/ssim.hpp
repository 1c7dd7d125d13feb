#pragma once

#include "svgdelta/raster.hpp"
#include "svgdelta/ssu.hpp"

namespace svgdelta {

// Structural similarity between two equal-size images: BT.601 luma, 11x11
// Gaussian window (sigma 1.5), C1=(0.01*255)^2, C2=(0.03*255)^2, mean over
// valid windows. Images smaller than the window fall back to one global
// window. Throws DimensionMismatchError.
double ssim(const Framebuffer& a, const Framebuffer& b);

// Mean per-frame SSIM between the original frames and the candidate's
// reconstruction, both rasterized at the original viewport size.
double identity_score(const FrameSequence& original, const UpdateSequence& candidate);

}  // namespace svgdelta
