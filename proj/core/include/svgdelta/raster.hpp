#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svgdelta/ssu.hpp"
#include "svgdelta/svg_model.hpp"

namespace svgdelta {

struct Rgba {
    std::uint8_t r = 0, g = 0, b = 0, a = 255;
};

inline bool operator==(Rgba x, Rgba y) { return x.r == y.r && x.g == y.g && x.b == y.b && x.a == y.a; }

constexpr Rgba kWhite{255, 255, 255, 255};
constexpr Rgba kBlack{0, 0, 0, 255};

// Row-major 8-bit RGBA raster, straight (non-premultiplied) alpha.
struct Framebuffer {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    static Framebuffer filled(int width, int height, Rgba color);

    Rgba at(int x, int y) const {
        const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 4;
        return {pixels[i], pixels[i + 1], pixels[i + 2], pixels[i + 3]};
    }
    void set(int x, int y, Rgba c) {
        const std::size_t i = (static_cast<std::size_t>(y) * width + x) * 4;
        pixels[i] = c.r;
        pixels[i + 1] = c.g;
        pixels[i + 2] = c.b;
        pixels[i + 3] = c.a;
    }
};

inline bool operator==(const Framebuffer& a, const Framebuffer& b) {
    return a.width == b.width && a.height == b.height && a.pixels == b.pixels;
}

// A fill paint: either no paint ("none") or a color.
struct Paint {
    bool none = false;
    Rgba color = kBlack;
};

// Parses #rgb / #rrggbb / the 16 basic CSS color names / "none".
// nullopt when the value is not a recognizable color.
std::optional<Paint> parse_color(std::string_view value);

// Scanline rasterization of the supported subset: filled paths and basic
// shapes, nested <g> transforms, fill / fill-rule / opacity attributes.
// 4x4 supersampled box-filter antialiasing, source-over compositing in
// document order. Strokes and gradients raise UnsupportedFeatureError;
// filter effects are skipped and reported through `warnings`.
Framebuffer rasterize(const SvgDocument& doc, int width, int height, Rgba background,
                      std::vector<std::string>* warnings = nullptr);

// apply(u), then rasterize every frame (T+1 framebuffers).
std::vector<Framebuffer> render_sequence(const UpdateSequence& u, int width, int height,
                                         Rgba background = kWhite,
                                         std::vector<std::string>* warnings = nullptr);

}  // namespace svgdelta
