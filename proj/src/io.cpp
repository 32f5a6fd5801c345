#include "huecomp/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include <png.h>

namespace huecomp::io {

namespace {

std::uint32_t swap_bytes(std::uint32_t v) {
    return (v >> 24) | ((v >> 8) & 0xff00u) | ((v << 8) & 0xff0000u) | (v << 24);
}

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

std::vector<unsigned char> slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + quoted(path));
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spill(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + quoted(path));
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed for " + quoted(path));
}

std::string lower_ext(const fs::path& p) {
    std::string e = p.extension().string();
    std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return e;
}

void check_linear_values(const LinearImage& img, const fs::path& path) {
    for (std::size_t k = 0; k < img.data.size(); ++k) {
        const float v = img.data[k];
        if (std::isnan(v) || std::isinf(v)) {
            throw IoError(quoted(path) + ": non-finite value at pixel " + std::to_string(k / 3));
        }
        if (v < 0.0f) throw IoError(quoted(path) + ": negative radiance at pixel " + std::to_string(k / 3));
    }
}

}  // namespace

// ---------------------------------------------------------------- PNG

LdrImage read_ldr(const fs::path& path) {
    const std::vector<unsigned char> bytes = slurp(path);
    png_image img;
    std::memset(&img, 0, sizeof img);
    img.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&img, bytes.data(), bytes.size())) {
        throw IoError(quoted(path) + ": not a readable PNG (" + img.message + ")");
    }
    if (img.format & PNG_FORMAT_FLAG_LINEAR) {
        png_image_free(&img);
        throw IoError(quoted(path) + ": unsupported bit depth (only 8-bit PNG is accepted)");
    }
    if (img.format & PNG_FORMAT_FLAG_ALPHA) {
        png_image_free(&img);
        throw IoError(quoted(path) + ": alpha channels are not supported");
    }
    const bool color = (img.format & PNG_FORMAT_FLAG_COLOR) != 0;
    img.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    const std::size_t channels = color ? 3 : 1;
    std::vector<unsigned char> buf(PNG_IMAGE_SIZE(img));
    if (!png_image_finish_read(&img, nullptr, buf.data(), 0, nullptr)) {
        throw IoError(quoted(path) + ": corrupt PNG (" + img.message + ")");
    }
    std::vector<Rgb> px(static_cast<std::size_t>(img.width) * img.height);
    for (std::size_t i = 0; i < px.size(); ++i) {
        for (int c = 0; c < 3; ++c) {
            px[i][c] = buf[i * channels + (color ? c : 0)] / 255.0;
        }
    }
    return LdrImage(img.width, img.height, std::move(px));
}

void write_ldr(const LdrImage& image, const fs::path& path) {
    if (image.size() == 0) throw IoError("refusing to write empty image to " + quoted(path));
    std::vector<unsigned char> buf(image.size() * 3);
    for (std::size_t i = 0; i < image.size(); ++i) {
        for (int c = 0; c < 3; ++c) buf[i * 3 + c] = static_cast<unsigned char>(quantize(image[i][c]));
    }
    png_image img;
    std::memset(&img, 0, sizeof img);
    img.version = PNG_IMAGE_VERSION;
    img.width = static_cast<png_uint_32>(image.width());
    img.height = static_cast<png_uint_32>(image.height());
    img.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&img, path.c_str(), 0, buf.data(), 0, nullptr)) {
        throw IoError("cannot write PNG " + quoted(path) + " (" + img.message + ")");
    }
}

// ---------------------------------------------------------------- RGBE

namespace {

std::array<unsigned char, 4> float_to_rgbe(float r, float g, float b) {
    const float v = std::max({r, g, b});
    if (v < 1e-32f) return {0, 0, 0, 0};
    int e = 0;
    const float scale = std::frexp(v, &e) * 256.0f / v;
    auto m = [&](float c) { return static_cast<unsigned char>(std::min(255.0f, c * scale)); };
    return {m(r), m(g), m(b), static_cast<unsigned char>(e + 128)};
}

void rgbe_to_float(const unsigned char* p, float* out) {
    if (p[3] == 0) {
        out[0] = out[1] = out[2] = 0.0f;
        return;
    }
    const float f = std::ldexp(1.0f, static_cast<int>(p[3]) - (128 + 8));
    for (int c = 0; c < 3; ++c) out[c] = (static_cast<float>(p[c]) + 0.5f) * f;
}

void rle_encode(const unsigned char* data, std::size_t n, std::string& out) {
    std::size_t i = 0;
    while (i < n) {
        // find the next run of >= 4 identical bytes
        std::size_t run_start = i;
        std::size_t run_len = 0;
        while (run_start < n) {
            run_len = 1;
            while (run_start + run_len < n && run_len < 127 && data[run_start + run_len] == data[run_start]) ++run_len;
            if (run_len >= 4) break;
            run_start += run_len;
            run_len = 0;
        }
        while (i < run_start) {
            const std::size_t lit = std::min<std::size_t>(128, run_start - i);
            out.push_back(static_cast<char>(lit));
            out.append(reinterpret_cast<const char*>(data + i), lit);
            i += lit;
        }
        if (run_len >= 4) {
            out.push_back(static_cast<char>(128 + run_len));
            out.push_back(static_cast<char>(data[run_start]));
            i = run_start + run_len;
        }
    }
}

}  // namespace

void write_rgbe(const LinearImage& image, const fs::path& path) {
    if (image.data.size() != image.width * image.height * 3) throw IoError("write_rgbe: inconsistent image");
    check_linear_values(image, path);
    std::string out = "#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n-Y " + std::to_string(image.height) + " +X " +
                      std::to_string(image.width) + "\n";
    const std::size_t w = image.width;
    const bool rle = w >= 8 && w < 0x8000;
    std::vector<unsigned char> line(w * 4);
    std::vector<unsigned char> comp(w);
    for (std::size_t y = 0; y < image.height; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            const float* p = &image.data[(y * w + x) * 3];
            const auto q = float_to_rgbe(p[0], p[1], p[2]);
            std::copy(q.begin(), q.end(), line.begin() + static_cast<std::ptrdiff_t>(x * 4));
        }
        if (!rle) {
            out.append(reinterpret_cast<const char*>(line.data()), line.size());
            continue;
        }
        out.push_back(2);
        out.push_back(2);
        out.push_back(static_cast<char>(w >> 8));
        out.push_back(static_cast<char>(w & 0xff));
        for (int c = 0; c < 4; ++c) {
            for (std::size_t x = 0; x < w; ++x) comp[x] = line[x * 4 + c];
            rle_encode(comp.data(), w, out);
        }
    }
    spill(path, out);
}

LinearImage read_rgbe(const fs::path& path) {
    const std::vector<unsigned char> bytes = slurp(path);
    std::size_t pos = 0;
    auto next_line = [&]() -> std::string {
        const auto nl = std::find(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end(), '\n');
        if (nl == bytes.end()) throw IoError(quoted(path) + ": truncated RGBE header");
        std::string s(bytes.begin() + static_cast<std::ptrdiff_t>(pos), nl);
        pos = static_cast<std::size_t>(nl - bytes.begin()) + 1;
        return s;
    };

    const std::string magic = next_line();
    if (magic.rfind("#?", 0) != 0) throw IoError(quoted(path) + ": missing #?RADIANCE signature");
    for (std::string line = next_line(); !line.empty(); line = next_line()) {
        if (line.rfind("FORMAT=", 0) == 0 && line != "FORMAT=32-bit_rle_rgbe") {
            throw IoError(quoted(path) + ": unsupported pixel format " + line.substr(7));
        }
    }
    std::istringstream res(next_line());
    std::string ylab, xlab;
    long long h = 0, w = 0;
    if (!(res >> ylab >> h >> xlab >> w) || ylab != "-Y" || xlab != "+X" || h <= 0 || w <= 0) {
        throw IoError(quoted(path) + ": unsupported or malformed resolution line");
    }

    LinearImage img{static_cast<std::size_t>(w), static_cast<std::size_t>(h),
                    std::vector<float>(static_cast<std::size_t>(w * h) * 3)};
    std::vector<unsigned char> line(static_cast<std::size_t>(w) * 4);
    auto need = [&](std::size_t n) {
        if (pos + n > bytes.size()) throw IoError(quoted(path) + ": truncated pixel data");
    };
    for (std::size_t y = 0; y < img.height; ++y) {
        need(4);
        const bool rle = w >= 8 && w < 0x8000 && bytes[pos] == 2 && bytes[pos + 1] == 2 &&
                         ((bytes[pos + 2] << 8) | bytes[pos + 3]) == w;
        if (!rle) {
            need(line.size());
            std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(pos), line.size(), line.begin());
            pos += line.size();
        } else {
            pos += 4;
            for (int c = 0; c < 4; ++c) {
                std::size_t x = 0;
                while (x < img.width) {
                    need(1);
                    unsigned count = bytes[pos++];
                    if (count > 128) {
                        count -= 128;
                        need(1);
                        if (x + count > img.width) throw IoError(quoted(path) + ": RLE run overflows scanline");
                        const unsigned char v = bytes[pos++];
                        for (unsigned k = 0; k < count; ++k) line[(x++) * 4 + c] = v;
                    } else {
                        if (count == 0 || x + count > img.width) {
                            throw IoError(quoted(path) + ": bad RLE literal count");
                        }
                        need(count);
                        for (unsigned k = 0; k < count; ++k) line[(x++) * 4 + c] = bytes[pos++];
                    }
                }
            }
        }
        for (std::size_t x = 0; x < img.width; ++x) rgbe_to_float(&line[x * 4], &img.data[(y * img.width + x) * 3]);
    }
    return img;
}

// ---------------------------------------------------------------- PFM

void write_pfm(const LinearImage& image, const fs::path& path) {
    if (image.data.size() != image.width * image.height * 3) throw IoError("write_pfm: inconsistent image");
    std::string out = "PF\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n-1.0\n";
    const std::size_t row = image.width * 3;
    for (std::size_t y = image.height; y-- > 0;) {
        for (std::size_t k = 0; k < row; ++k) {
            auto bits = std::bit_cast<std::uint32_t>(image.data[y * row + k]);
            if constexpr (std::endian::native == std::endian::big) bits = swap_bytes(bits);
            char b[4];
            std::memcpy(b, &bits, 4);
            out.append(b, 4);
        }
    }
    spill(path, out);
}

LinearImage read_pfm(const fs::path& path) {
    const std::vector<unsigned char> bytes = slurp(path);
    std::size_t pos = 0;
    auto token = [&]() {
        while (pos < bytes.size() && std::isspace(bytes[pos])) ++pos;
        std::string t;
        while (pos < bytes.size() && !std::isspace(bytes[pos])) t.push_back(static_cast<char>(bytes[pos++]));
        if (t.empty()) throw IoError(quoted(path) + ": truncated PFM header");
        return t;
    };
    const std::string magic = token();
    if (magic != "PF" && magic != "Pf") throw IoError(quoted(path) + ": not a PFM file");
    const std::size_t channels = magic == "PF" ? 3 : 1;
    long long w = 0, h = 0;
    double scale = 0.0;
    try {
        w = std::stoll(token());
        h = std::stoll(token());
        scale = std::stod(token());
    } catch (const std::logic_error&) {
        throw IoError(quoted(path) + ": malformed PFM header");
    }
    if (w <= 0 || h <= 0 || scale == 0.0 || !std::isfinite(scale)) {
        throw IoError(quoted(path) + ": malformed PFM header");
    }
    ++pos;  // single whitespace byte before the raster
    const bool little = scale < 0.0;
    const std::size_t n = static_cast<std::size_t>(w * h) * channels;
    if (pos + n * 4 > bytes.size()) throw IoError(quoted(path) + ": truncated PFM raster");

    LinearImage img{static_cast<std::size_t>(w), static_cast<std::size_t>(h),
                    std::vector<float>(static_cast<std::size_t>(w * h) * 3)};
    const std::size_t row = img.width * channels;
    for (std::size_t r = 0; r < img.height; ++r) {
        const std::size_t y = img.height - 1 - r;
        for (std::size_t k = 0; k < row; ++k) {
            std::uint32_t bits;
            std::memcpy(&bits, &bytes[pos + (r * row + k) * 4], 4);
            if ((std::endian::native == std::endian::little) != little) bits = swap_bytes(bits);
            const float v = std::bit_cast<float>(bits);
            if (channels == 3) {
                img.data[y * row + k] = v;
            } else {
                for (int c = 0; c < 3; ++c) img.data[(y * img.width + k) * 3 + c] = v;
            }
        }
    }
    check_linear_values(img, path);
    return img;
}

// ---------------------------------------------------------------- radiance maps

RadianceMap from_linear(const LinearImage& image) {
    std::vector<Rgb> px(image.width * image.height);
    for (std::size_t i = 0; i < px.size(); ++i) {
        for (int c = 0; c < 3; ++c) {
            const float v = image.data[i * 3 + c];
            if (!(v >= 0.0f) || std::isinf(v)) {
                throw IoError("radiance pixel " + std::to_string(i) + " is negative or not finite");
            }
            px[i][c] = std::log(static_cast<double>(std::max(v, kMinRadiance)));
        }
    }
    return RadianceMap(image.width, image.height, std::move(px));
}

LinearImage to_linear(const RadianceMap& map) {
    LinearImage img{map.width(), map.height(), std::vector<float>(map.size() * 3)};
    for (std::size_t i = 0; i < map.size(); ++i) {
        for (int c = 0; c < 3; ++c) {
            const auto v = static_cast<float>(std::exp(map[i][c]));
            if (std::isinf(v)) throw IoError("radiance pixel " + std::to_string(i) + " overflows 32-bit float");
            img.data[i * 3 + c] = v;
        }
    }
    return img;
}

RadianceMap read_hdr(const fs::path& path) {
    const std::string ext = lower_ext(path);
    if (ext == ".pfm") return from_linear(read_pfm(path));
    if (ext == ".hdr" || ext == ".pic" || ext == ".rgbe") {
        const LinearImage img = read_rgbe(path);
        return from_linear(img);
    }
    throw IoError(quoted(path) + ": unknown HDR extension (use .hdr or .pfm)");
}

void write_hdr(const RadianceMap& map, const fs::path& path) {
    const std::string ext = lower_ext(path);
    if (ext == ".pfm") {
        write_pfm(to_linear(map), path);
    } else if (ext == ".hdr" || ext == ".pic" || ext == ".rgbe") {
        write_rgbe(to_linear(map), path);
    } else {
        throw IoError(quoted(path) + ": unknown HDR extension (use .hdr or .pfm)");
    }
}

// ---------------------------------------------------------------- JSON

nlohmann::json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + quoted(path));
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(quoted(path) + ": invalid JSON (" + e.what() + ")");
    }
}

void write_json(const nlohmann::json& doc, const fs::path& path) { spill(path, doc.dump(2) + "\n"); }

StackManifest read_manifest(const fs::path& path) {
    const nlohmann::json doc = read_json(path);
    StackManifest m;
    try {
        if (doc.contains("base_time")) m.base_time = doc.at("base_time").get<double>();
        for (const auto& entry : doc.at("images")) {
            m.images.push_back({fs::path(entry.at("path").get<std::string>()), entry.at("ev").get<double>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw IoError(quoted(path) + ": malformed manifest (" + e.what() + ")");
    }
    if (!(m.base_time > 0.0) || !std::isfinite(m.base_time)) {
        throw IoError(quoted(path) + ": base_time must be positive");
    }
    std::set<fs::path> seen;
    const fs::path dir = path.parent_path();
    for (auto& e : m.images) {
        if (!std::isfinite(e.ev)) throw IoError(quoted(path) + ": EV for " + quoted(e.path) + " is not finite");
        if (e.path.is_relative()) e.path = dir / e.path;
        if (!seen.insert(e.path.lexically_normal()).second) {
            throw IoError(quoted(path) + ": duplicate image path " + quoted(e.path));
        }
    }
    return m;
}

void write_manifest(const StackManifest& manifest, const fs::path& path) {
    nlohmann::json doc;
    doc["base_time"] = manifest.base_time;
    doc["images"] = nlohmann::json::array();
    for (const auto& e : manifest.images) doc["images"].push_back({{"path", e.path.generic_string()}, {"ev", e.ev}});
    write_json(doc, path);
}

ExposureStack load_stack(const StackManifest& manifest) {
    if (manifest.images.size() < 2) {
        throw InputError("manifest lists " + std::to_string(manifest.images.size()) +
                         " image(s); an exposure stack needs at least 2");
    }
    std::vector<LdrImage> images;
    std::vector<double> evs;
    for (const auto& e : manifest.images) {
        if (!fs::exists(e.path)) throw IoError("missing image " + quoted(e.path));
        images.push_back(read_ldr(e.path));
        evs.push_back(e.ev);
    }
    std::string mismatched;
    for (std::size_t j = 1; j < images.size(); ++j) {
        if (!images[j].same_shape(images[0].width(), images[0].height())) {
            mismatched += " " + quoted(manifest.images[j].path) + " (" + std::to_string(images[j].width()) + "x" +
                          std::to_string(images[j].height()) + ")";
        }
    }
    if (!mismatched.empty()) {
        throw InputError("images differ in size from " + quoted(manifest.images[0].path) + " (" +
                         std::to_string(images[0].width()) + "x" + std::to_string(images[0].height()) +
                         "):" + mismatched);
    }
    return ExposureStack(std::move(images), std::move(evs), manifest.base_time);
}

nlohmann::json crf_to_json(const CrfTable& crf) {
    nlohmann::json doc;
    doc["levels"] = crf.levels();
    static constexpr const char* keys[] = {"r", "g", "b"};
    for (int c = 0; c < 3; ++c) {
        const auto t = crf.channel(c);
        doc[keys[c]] = std::vector<double>(t.begin(), t.end());
    }
    return doc;
}

CrfTable crf_from_json(const nlohmann::json& doc) {
    try {
        const int levels = doc.at("levels").get<int>();
        std::array<std::vector<double>, 3> t;
        static constexpr const char* keys[] = {"r", "g", "b"};
        for (int c = 0; c < 3; ++c) {
            t[c] = doc.at(keys[c]).get<std::vector<double>>();
            if (static_cast<int>(t[c].size()) != levels) {
                throw IoError(std::string("CRF table channel '") + keys[c] + "' does not have " +
                              std::to_string(levels) + " entries");
            }
        }
        return CrfTable(std::move(t));
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("malformed CRF table: ") + e.what());
    }
}

CrfTable read_crf(const fs::path& path) {
    try {
        return crf_from_json(read_json(path));
    } catch (const InputError& e) {
        throw IoError(quoted(path) + ": " + e.what());
    }
}

nlohmann::json report_to_json(const HueDiffReport& report) {
    return {{"mean_dH", report.mean_dH},
            {"pixels", report.pixels},
            {"excluded", report.excluded},
            {"variant", std::string(to_string(report.variant))}};
}

}  // namespace huecomp::io
