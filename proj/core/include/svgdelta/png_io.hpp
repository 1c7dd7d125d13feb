#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "svgdelta/raster.hpp"

namespace svgdelta {

// Deterministic RGBA8 PNG encoding (filter 0, fixed deflate settings).
std::vector<std::uint8_t> encode_png(const Framebuffer& fb);

void write_png(const std::filesystem::path& path, const Framebuffer& fb);

}  // namespace svgdelta
