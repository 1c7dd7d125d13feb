#include "svgdelta/frames_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "svgdelta/errors.hpp"

namespace svgdelta {

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot open " + tmp.string() + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) throw Error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open " + path.string());
    std::ostringstream out;
    out << f.rdbuf();
    return out.str();
}

namespace {

std::string frame_file_name(std::size_t index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "f%04zu.svg", index);
    return buf;
}

}  // namespace

LoadedFrames load_frames(const std::filesystem::path& dir) {
    const std::filesystem::path meta_path = dir / "meta.json";
    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(read_file(meta_path));
    } catch (const nlohmann::json::exception& e) {
        throw Error(meta_path.string() + " is not valid JSON: " + e.what());
    }
    if (!meta.contains("fps") || !meta.contains("viewport") || !meta.contains("frames"))
        throw Error(meta_path.string() + " must define fps, viewport and frames");

    LoadedFrames loaded;
    loaded.seq.fps = meta["fps"].get<int>();
    if (loaded.seq.fps <= 0) throw Error("fps must be positive");
    const auto& vp = meta["viewport"];
    if (!vp.is_array() || vp.size() != 2)
        throw Error("viewport must be [width, height]");
    loaded.seq.viewport_w = vp[0].get<double>();
    loaded.seq.viewport_h = vp[1].get<double>();
    if (meta.contains("description")) loaded.description = meta["description"].get<std::string>();

    const auto& files = meta["frames"];
    if (!files.is_array() || files.empty())
        throw Error("frames list must name at least the base document");
    if (files.size() - 1 > kMaxSequenceUpdates)
        throw Error("sequence has " + std::to_string(files.size() - 1) + " updates, maximum is " +
                    std::to_string(kMaxSequenceUpdates));

    for (const auto& name : files) {
        SvgDocument doc = parse_svg(read_file(dir / name.get<std::string>()));
        loaded.seq.frames.push_back(std::move(doc));
    }
    return loaded;
}

void save_frames(const std::filesystem::path& dir, const FrameSequence& seq,
                 const std::string& description) {
    if (seq.frames.empty()) throw Error("refusing to save an empty frame sequence");
    std::filesystem::create_directories(dir);

    nlohmann::json meta;
    meta["fps"] = seq.fps;
    meta["viewport"] = {seq.viewport_w, seq.viewport_h};
    auto& files = meta["frames"] = nlohmann::json::array();
    for (std::size_t i = 0; i < seq.frames.size(); ++i) files.push_back(frame_file_name(i));
    if (!description.empty()) meta["description"] = description;

    write_file_atomic(dir / "meta.json", meta.dump(2) + "\n");
    for (std::size_t i = 0; i < seq.frames.size(); ++i)
        write_file_atomic(dir / frame_file_name(i), serialize_svg(seq.frames[i]));
}

}  // namespace svgdelta
