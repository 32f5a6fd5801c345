#include <doctest.h>

#include <bit>
#include <cmath>
#include <fstream>
#include <random>

#include "huecomp/io.hpp"
#include "support/scenes.hpp"

using namespace huecomp;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = HUECOMP_FIXTURES;

io::LinearImage random_linear(std::mt19937_64& rng, std::size_t w, std::size_t h) {
    std::uniform_real_distribution<float> ln(-12.0f, 12.0f);
    io::LinearImage img{w, h, std::vector<float>(w * h * 3)};
    for (float& v : img.data) v = std::exp(ln(rng));
    return img;
}

// Error of each channel relative to the largest channel of its pixel.
double rgbe_error(const io::LinearImage& a, const io::LinearImage& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.width * a.height; ++i) {
        const double m = std::max({a.data[i * 3], a.data[i * 3 + 1], a.data[i * 3 + 2]});
        for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(a.data[i * 3 + c] - b.data[i * 3 + c]) / m);
    }
    return worst;
}

}  // namespace

TEST_CASE("png round trip keeps codes") {
    const fs::path dir = testing::scratch_dir("io_png");
    std::mt19937_64 rng(21);
    for (auto [w, h] : {std::pair{1, 1}, {7, 3}, {64, 40}}) {
        std::vector<Rgb> px(w * h);
        for (auto& p : px) {
            for (double& v : p) v = dequantize(static_cast<int>(rng() % 256));
        }
        const LdrImage img(w, h, px);
        io::write_ldr(img, dir / "a.png");
        CHECK(io::read_ldr(dir / "a.png") == img);
    }
    // values between codes snap to the nearest code
    io::write_ldr(LdrImage::filled(1, 1, {0.5, 0.2, 1.0}), dir / "b.png");
    const Rgb got = io::read_ldr(dir / "b.png")[0];
    CHECK(quantize(got[0]) == 128);
    CHECK(quantize(got[1]) == 51);
    CHECK(got[2] == 1.0);
}

TEST_CASE("png fixtures") {
    const LdrImage gray = io::read_ldr(kFixtures / "io/gray.png");
    CHECK(gray.width() == 4);
    CHECK(gray.height() == 3);
    CHECK(gray.at(1, 0) == Rgb{17 / 255.0, 17 / 255.0, 17 / 255.0});
    CHECK(quantize(gray.at(3, 1)[2]) == 200);
    CHECK_THROWS_WITH_AS(io::read_ldr(kFixtures / "io/rgb16.png"), doctest::Contains("bit depth"), IoError);
    CHECK_THROWS_AS(io::read_ldr(kFixtures / "io/rgba.png"), IoError);
    CHECK_THROWS_WITH_AS(io::read_ldr(kFixtures / "io/corrupt.png"), doctest::Contains("corrupt.png"), IoError);
    CHECK_THROWS_AS(io::read_ldr(kFixtures / "io/does_not_exist.png"), IoError);
}

TEST_CASE("pfm round trip is bit exact") {
    const fs::path dir = testing::scratch_dir("io_pfm");
    std::mt19937_64 rng(22);
    const io::LinearImage img = random_linear(rng, 13, 5);
    io::write_pfm(img, dir / "a.pfm");
    CHECK(io::read_pfm(dir / "a.pfm") == img);

    // scale sign: a big-endian file reads the same
    std::ofstream be(dir / "be.pfm", std::ios::binary);
    be << "PF\n1 1\n1.0\n";
    for (float v : {1.5f, 2.0f, 0.25f}) {
        auto bits = std::bit_cast<std::uint32_t>(v);
        for (int s = 24; s >= 0; s -= 8) be.put(static_cast<char>((bits >> s) & 0xff));
    }
    be.close();
    CHECK(io::read_pfm(dir / "be.pfm").data == std::vector<float>{1.5f, 2.0f, 0.25f});
}

TEST_CASE("pfm with NaN names the pixel") {
    CHECK_THROWS_WITH_AS(io::read_hdr(kFixtures / "io/nan.pfm"), doctest::Contains("pixel 6"), IoError);
}

TEST_CASE("rgbe round trip within 1 percent") {
    const fs::path dir = testing::scratch_dir("io_rgbe");
    std::mt19937_64 rng(23);
    for (auto [w, h] : {std::pair{1, 1}, {7, 2}, {100, 9}}) {
        const io::LinearImage img = random_linear(rng, w, h);
        io::write_rgbe(img, dir / "a.hdr");
        const io::LinearImage back = io::read_rgbe(dir / "a.hdr");
        REQUIRE(back.width == img.width);
        CHECK(rgbe_error(img, back) < 0.01);
    }
}

TEST_CASE("rgbe reads files written by another encoder") {
    const io::LinearImage ours = io::read_rgbe(kFixtures / "io/opencv_rle.hdr");
    const io::LinearImage theirs = io::read_pfm(kFixtures / "io/opencv_rle.pfm");
    REQUIRE(ours.width == 64);
    REQUIRE(ours.height == 8);
    CHECK(rgbe_error(theirs, ours) < 0.01);
}

TEST_CASE("hdr dispatch and log conversion") {
    const fs::path dir = testing::scratch_dir("io_hdr");
    std::mt19937_64 rng(24);
    const RadianceMap m = testing::random_radiance(rng, 9, 4, -8.0, 8.0);
    io::write_hdr(m, dir / "m.pfm");
    const RadianceMap back = io::read_hdr(dir / "m.pfm");
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (int c = 0; c < 3; ++c) CHECK(std::abs(back[i][c] - m[i][c]) < 1e-6);
    }
    io::write_hdr(m, dir / "m.hdr");
    CHECK(io::read_hdr(dir / "m.hdr").width() == 9);
    CHECK_THROWS_AS(io::write_hdr(m, dir / "m.exr"), IoError);

    const io::LinearImage zero{1, 1, {0.0f, 1.0f, 2.0f}};
    CHECK(io::from_linear(zero)[0][0] == doctest::Approx(std::log(static_cast<double>(io::kMinRadiance))));
    const io::LinearImage neg{1, 1, {-1.0f, 1.0f, 2.0f}};
    CHECK_THROWS_AS(io::from_linear(neg), IoError);
    CHECK_THROWS_AS(io::to_linear(RadianceMap(1, 1, {Rgb{200.0, 0.0, 0.0}})), IoError);
}

TEST_CASE("manifest") {
    const fs::path dir = testing::scratch_dir("io_manifest");
    std::mt19937_64 rng(25);
    io::StackManifest m;
    for (double ev : {-2.0, -0.5, 0.0, 0.5, 2.0}) {
        const std::string name = "e" + std::to_string(m.images.size()) + ".png";
        io::write_ldr(testing::random_image(rng, 6, 5), dir / name);
        m.images.push_back({name, ev});
    }
    io::write_manifest(m, dir / "stack.json");
    const io::StackManifest back = io::read_manifest(dir / "stack.json");
    CHECK(back.images.size() == 5);
    CHECK(back.images[0].path == dir / "e0.png");
    const ExposureStack s = io::load_stack(back);
    CHECK(s.count() == 5);
    CHECK(s.evs()[1] == -0.5);

    SUBCASE("single entry") {
        io::StackManifest one;
        one.images.push_back({dir / "e0.png", 0.0});
        CHECK_THROWS_AS(io::load_stack(one), InputError);
    }
    SUBCASE("duplicate path") {
        io::write_json(nlohmann::json::parse(R"({"images":[{"path":"e0.png","ev":0},{"path":"./e0.png","ev":1}]})"),
                       dir / "dup.json");
        CHECK_THROWS_WITH_AS(io::read_manifest(dir / "dup.json"), doctest::Contains("duplicate"), IoError);
    }
    SUBCASE("missing file") {
        io::StackManifest gone = back;
        gone.images[3].path = dir / "nope.png";
        CHECK_THROWS_WITH_AS(io::load_stack(gone), doctest::Contains("nope.png"), IoError);
    }
    SUBCASE("size mismatch names the offender") {
        io::write_ldr(testing::random_image(rng, 5, 5), dir / "odd.png");
        io::StackManifest odd = back;
        odd.images[2].path = dir / "odd.png";
        CHECK_THROWS_WITH_AS(io::load_stack(odd), doctest::Contains("odd.png"), InputError);
    }
    SUBCASE("malformed") {
        io::write_json(nlohmann::json::parse(R"({"images":[{"path":"e0.png"}]})"), dir / "bad.json");
        CHECK_THROWS_AS(io::read_manifest(dir / "bad.json"), IoError);
    }
}

TEST_CASE("crf json round trip") {
    std::vector<double> t(256);
    for (int z = 0; z < 256; ++z) t[z] = (z - 128) / 37.0;
    const CrfTable crf({t, t, t});
    const nlohmann::json doc = io::crf_to_json(crf);
    CHECK(doc.at("levels") == 256);
    CHECK(doc.at("g").size() == 256);
    CHECK(io::crf_from_json(nlohmann::json::parse(doc.dump())) == crf);
    nlohmann::json bad = doc;
    bad["r"][3] = 100.0;
    CHECK_THROWS_AS(io::crf_from_json(bad), InputError);
}

TEST_CASE("report json") {
    HueDiffReport r;
    r.mean_dH = 1.25;
    r.pixels = 10;
    r.excluded = 2;
    r.variant = HueVariant::scaled_dHp;
    const nlohmann::json j = io::report_to_json(r);
    CHECK(j.at("mean_dH") == 1.25);
    CHECK(j.at("pixels") == 10);
    CHECK(j.at("excluded") == 2);
    CHECK(j.at("variant") == "scaled_dHp");
}
