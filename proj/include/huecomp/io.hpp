#pragma once

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "huecomp/core.hpp"
#include "huecomp/metrics.hpp"

namespace huecomp::io {

namespace fs = std::filesystem;

/// 8-bit RGB or grayscale PNG; codes are divided by 255, gray is copied to all channels.
LdrImage read_ldr(const fs::path& path);
/// Writes an 8-bit RGB PNG, codes = round-half-up(v · 255).
void write_ldr(const LdrImage& image, const fs::path& path);

/// Linear RGB floats, interleaved, top row first.
struct LinearImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<float> data;

    friend bool operator==(const LinearImage&, const LinearImage&) = default;
};

LinearImage read_rgbe(const fs::path& path);
/// Radiance "#?RADIANCE" file with run-length encoded scanlines where the width allows.
void write_rgbe(const LinearImage& image, const fs::path& path);

LinearImage read_pfm(const fs::path& path);
/// "PF" color PFM, little-endian (negative scale), bottom row first on disk.
void write_pfm(const LinearImage& image, const fs::path& path);

/// Smallest linear radiance kept when converting to log space; zeros are raised to it.
inline constexpr float kMinRadiance = 1.17549435e-38f;

RadianceMap from_linear(const LinearImage& image);
/// Throws IoError if a value overflows float.
LinearImage to_linear(const RadianceMap& map);

/// Dispatch on extension: .hdr / .pic -> RGBE, .pfm -> PFM.
RadianceMap read_hdr(const fs::path& path);
void write_hdr(const RadianceMap& map, const fs::path& path);

struct ManifestEntry {
    fs::path path;
    double ev = 0.0;
};

struct StackManifest {
    std::vector<ManifestEntry> images;
    double base_time = 1.0;
};

/// Parses { "base_time": 1.0, "images": [{ "path": "...", "ev": -2.0 }, ...] }.
/// Relative paths are resolved against the manifest's directory.
StackManifest read_manifest(const fs::path& path);
/// Writes paths exactly as stored in the manifest.
void write_manifest(const StackManifest& manifest, const fs::path& path);
ExposureStack load_stack(const StackManifest& manifest);

nlohmann::json crf_to_json(const CrfTable& crf);
CrfTable crf_from_json(const nlohmann::json& doc);
CrfTable read_crf(const fs::path& path);

nlohmann::json report_to_json(const HueDiffReport& report);

nlohmann::json read_json(const fs::path& path);
void write_json(const nlohmann::json& doc, const fs::path& path);

}  // namespace huecomp::io
