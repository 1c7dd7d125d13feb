#pragma once

#include <filesystem>
#include <string>

#include "svgdelta/svg_model.hpp"

namespace svgdelta {

// On-disk frame sequence layout: a directory holding meta.json
//   {"fps": int, "viewport": [w, h], "frames": ["f0000.svg", ...],
//    "description": optional str}
// plus the listed SVG files; frame 0 is the base document.

struct LoadedFrames {
    FrameSequence seq;
    std::string description;  // empty when the manifest has none
};

LoadedFrames load_frames(const std::filesystem::path& dir);

void save_frames(const std::filesystem::path& dir, const FrameSequence& seq,
                 const std::string& description = "");

// Write-to-temp-then-rename, so readers never observe partial files.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace svgdelta
