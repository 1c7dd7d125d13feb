#include "svgdelta/png_io.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>

#include "svgdelta/errors.hpp"

namespace svgdelta {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put_chunk(std::vector<std::uint8_t>& out, const char type[4],
               const std::uint8_t* data, std::size_t size) {
    put_u32(out, static_cast<std::uint32_t>(size));
    const std::size_t crc_start = out.size();
    out.insert(out.end(), type, type + 4);
    if (size) out.insert(out.end(), data, data + size);
    const uLong crc = crc32(0, out.data() + crc_start, static_cast<uInt>(out.size() - crc_start));
    put_u32(out, static_cast<std::uint32_t>(crc));
}

}  // namespace

std::vector<std::uint8_t> encode_png(const Framebuffer& fb) {
    if (fb.width <= 0 || fb.height <= 0 ||
        fb.pixels.size() != static_cast<std::size_t>(fb.width) * fb.height * 4)
        throw DimensionMismatchError("framebuffer is not a well formed RGBA raster");

    // Raw scanlines, each prefixed with filter byte 0.
    const std::size_t stride = static_cast<std::size_t>(fb.width) * 4;
    std::vector<std::uint8_t> raw(fb.height * (stride + 1));
    for (int y = 0; y < fb.height; ++y) {
        std::uint8_t* row = raw.data() + static_cast<std::size_t>(y) * (stride + 1);
        row[0] = 0;
        std::memcpy(row + 1, fb.pixels.data() + static_cast<std::size_t>(y) * stride, stride);
    }

    uLongf bound = compressBound(static_cast<uLong>(raw.size()));
    std::vector<std::uint8_t> compressed(bound);
    if (compress2(compressed.data(), &bound, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK)
        throw Error("zlib compression failed");
    compressed.resize(bound);

    std::vector<std::uint8_t> out;
    static const std::uint8_t kSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
    out.insert(out.end(), kSignature, kSignature + 8);

    std::uint8_t ihdr[13];
    ihdr[0] = static_cast<std::uint8_t>(fb.width >> 24);
    ihdr[1] = static_cast<std::uint8_t>(fb.width >> 16);
    ihdr[2] = static_cast<std::uint8_t>(fb.width >> 8);
    ihdr[3] = static_cast<std::uint8_t>(fb.width);
    ihdr[4] = static_cast<std::uint8_t>(fb.height >> 24);
    ihdr[5] = static_cast<std::uint8_t>(fb.height >> 16);
    ihdr[6] = static_cast<std::uint8_t>(fb.height >> 8);
    ihdr[7] = static_cast<std::uint8_t>(fb.height);
    ihdr[8] = 8;   // bit depth
    ihdr[9] = 6;   // RGBA
    ihdr[10] = 0;  // deflate
    ihdr[11] = 0;  // adaptive filtering
    ihdr[12] = 0;  // no interlace
    put_chunk(out, "IHDR", ihdr, sizeof(ihdr));
    put_chunk(out, "IDAT", compressed.data(), compressed.size());
    put_chunk(out, "IEND", nullptr, 0);
    return out;
}

void write_png(const std::filesystem::path& path, const Framebuffer& fb) {
    const std::vector<std::uint8_t> bytes = encode_png(fb);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open " + path.string() + " for writing");
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw Error("write failed for " + path.string());
}

}  // namespace svgdelta
