#include "support/scenes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace huecomp::testing {

namespace {

using Vec = std::array<double, 3>;

Vec operator*(const Vec& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
Vec operator*(const Vec& a, const Vec& b) { return {a[0] * b[0], a[1] * b[1], a[2] * b[2]}; }
Vec operator+(const Vec& a, const Vec& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

double hash01(std::int64_t x, std::int64_t y, std::uint64_t seed) {
    std::uint64_t h = static_cast<std::uint64_t>(x) * 0x9E3779B97F4A7C15ull ^
                      static_cast<std::uint64_t>(y) * 0xC2B2AE3D27D4EB4Full ^ seed * 0x165667B19E3779F9ull;
    h ^= h >> 31;
    h *= 0xBF58476D1CE4E5B9ull;
    h ^= h >> 29;
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Bilinear value noise in [0,1] with cells of `cell` pixels.
double noise(double x, double y, double cell, std::uint64_t seed) {
    const double fx = x / cell;
    const double fy = y / cell;
    const auto ix = static_cast<std::int64_t>(std::floor(fx));
    const auto iy = static_cast<std::int64_t>(std::floor(fy));
    const double tx = fx - ix;
    const double ty = fy - iy;
    const double a = hash01(ix, iy, seed);
    const double b = hash01(ix + 1, iy, seed);
    const double c = hash01(ix, iy + 1, seed);
    const double d = hash01(ix + 1, iy + 1, seed);
    return (a * (1 - tx) + b * tx) * (1 - ty) + (c * (1 - tx) + d * tx) * ty;
}

double texture(double x, double y, std::uint64_t seed) {
    return 0.5 * noise(x, y, 16.0, seed) + 0.3 * noise(x, y, 5.0, seed + 1) + 0.2 * noise(x, y, 2.0, seed + 2);
}

double blob(double u, double v, double cu, double cv, double r) {
    const double d2 = (u - cu) * (u - cu) + (v - cv) * (v - cv);
    return std::exp(-d2 / (r * r));
}

bool inside(double u, double v, double u0, double v0, double u1, double v1) {
    return u >= u0 && u <= u1 && v >= v0 && v <= v1;
}

template <class F>
RadianceMap build(std::size_t w, std::size_t h, F&& shade) {
    std::vector<Rgb> px(w * h);
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            const double u = w > 1 ? static_cast<double>(x) / (w - 1) : 0.5;
            const double v = h > 1 ? static_cast<double>(y) / (h - 1) : 0.5;
            // texture coordinates are in units of a 256-pixel frame
            const double tx = u * 255.0;
            const double ty = v * 255.0;
            const Vec e = shade(u, v, tx, ty);
            for (int c = 0; c < 3; ++c) px[y * w + x][c] = std::log(std::max(e[c], 1e-5));
        }
    }
    return RadianceMap(w, h, std::move(px));
}

Vec sky(double u, double v, double tx, double ty) {
    if (v < 0.55) {
        Vec e = Vec{0.35, 0.55, 1.0} * (3.0 * (1.6 - v));
        e = e + Vec{1.0, 0.82, 0.55} * (60.0 * blob(u, v, 0.75, 0.2, 0.12));
        if (blob(u, v, 0.75, 0.2, 0.045) > 0.5) e = Vec{1.0, 0.93, 0.78} * 500.0;
        const double cloud = noise(tx, ty, 24.0, 11);
        if (cloud > 0.62) e = e + Vec{1.0, 0.95, 0.9} * (12.0 * (cloud - 0.62));
        return e;
    }
    const double t = 0.6 + 0.8 * texture(tx, ty, 3);
    Vec e = Vec{0.10, 0.24, 0.04} * (0.6 * t);
    if (u < 0.35) e = e * 0.12;  // shadow of a building
    if (blob(u, v, 0.3, 0.78, 0.09) > 0.4) {
        e = Vec{0.85, 0.06, 0.03} * (1.5 * (0.5 + blob(u, v, 0.27, 0.74, 0.08)));
    }
    if (inside(u, v, 0.55, 0.7, 0.7, 0.95) && texture(tx, ty, 9) > 0.55) e = Vec{0.95, 0.75, 0.05} * 1.2;
    if (inside(u, v, 0.08, 0.65, 0.22, 0.9)) e = Vec{0.15, 0.2, 0.75} * (0.08 * t);
    return e;
}

Vec window(double u, double v, double tx, double ty) {
    const double t = 0.7 + 0.6 * texture(tx, ty, 21);
    if (inside(u, v, 0.55, 0.15, 0.9, 0.6)) {
        const bool frame = std::abs(u - 0.725) < 0.01 || std::abs(v - 0.375) < 0.01;
        if (frame) return Vec{0.3, 0.25, 0.2} * 0.05;
        if (v < 0.4 - 0.1 * noise(tx, 0.0, 20.0, 5)) return Vec{0.45, 0.65, 1.0} * (40.0 * (1.2 - v));
        return Vec{0.18, 0.45, 0.08} * (18.0 * t);
    }
    const double spill = 1.0 + 25.0 * blob(u, v, 0.72, 0.85, 0.3);
    Vec e = Vec{0.6, 0.36, 0.2} * (0.03 * t);
    if (v > 0.75) e = Vec{0.45, 0.25, 0.12} * (0.05 * t);
    if (inside(u, v, 0.08, 0.55, 0.42, 0.8)) e = Vec{0.06, 0.12, 0.6} * (0.06 * t);
    if (blob(u, v, 0.2, 0.3, 0.06) > 0.5) e = Vec{0.9, 0.1, 0.08} * 0.2;
    if (blob(u, v, 0.2, 0.3, 0.025) > 0.5) e = Vec{1.0, 0.8, 0.5} * 80.0;
    return e * spill;
}

Vec checker(double u, double v, double tx, double ty) {
    static constexpr Vec patches[24] = {
        {0.18, 0.08, 0.05}, {0.55, 0.30, 0.22}, {0.10, 0.19, 0.33}, {0.09, 0.15, 0.05}, {0.24, 0.22, 0.43},
        {0.13, 0.51, 0.41}, {0.68, 0.20, 0.03}, {0.06, 0.10, 0.39}, {0.55, 0.08, 0.11}, {0.10, 0.04, 0.14},
        {0.34, 0.50, 0.05}, {0.75, 0.36, 0.02}, {0.02, 0.05, 0.29}, {0.07, 0.29, 0.06}, {0.44, 0.03, 0.04},
        {0.85, 0.57, 0.01}, {0.50, 0.08, 0.30}, {0.00, 0.23, 0.38}, {0.88, 0.88, 0.86}, {0.58, 0.59, 0.59},
        {0.36, 0.36, 0.36}, {0.19, 0.19, 0.19}, {0.09, 0.09, 0.09}, {0.03, 0.03, 0.03},
    };
    const double illum = std::exp2(-3.5 + 9.0 * u) * (0.8 + 0.4 * v);
    const double gu = u * 6.0;
    const double gv = v * 4.0;
    const int col = std::min(5, static_cast<int>(gu));
    const int row = std::min(3, static_cast<int>(gv));
    const double fu = gu - col;
    const double fv = gv - row;
    const double t = 0.92 + 0.16 * texture(tx, ty, 31);
    if (fu < 0.08 || fu > 0.92 || fv < 0.08 || fv > 0.92) return Vec{0.05, 0.05, 0.05} * (illum * t);
    return patches[row * 6 + col] * (illum * t);
}

Vec sunset(double u, double v, double tx, double ty) {
    const double horizon = 0.6;
    if (v < horizon) {
        const double k = v / horizon;
        const Vec top{0.22, 0.08, 0.40};
        const Vec low{1.0, 0.42, 0.08};
        Vec e = top * (1.5 * (1 - k)) + low * (30.0 * std::pow(k, 3.0));
        e = e + Vec{1.0, 0.6, 0.2} * (80.0 * blob(u, v, 0.5, 0.58, 0.1));
        if (blob(u, v, 0.5, 0.58, 0.05) > 0.5) e = Vec{1.0, 0.75, 0.35} * 700.0;
        const double cloud = noise(tx, ty * 3.0, 30.0, 41);
        if (cloud > 0.6 && v < 0.45) e = Vec{0.9, 0.3, 0.35} * (6.0 * (0.5 + cloud));
        return e;
    }
    const double t = 0.5 + texture(tx, ty, 43);
    Vec e = Vec{0.5, 0.22, 0.12} * (1.2 * t) + Vec{1.0, 0.55, 0.2} * (25.0 * blob(u, 0.0, 0.5, 0.0, 0.06));
    const double hill = 0.75 + 0.08 * std::sin(u * 9.0) + 0.05 * noise(tx, 0.0, 12.0, 47);
    if (v > hill) e = Vec{0.05, 0.03, 0.06} * (0.05 * t);
    return e;
}

Vec night(double u, double v, double tx, double ty) {
    const double t = 0.6 + 0.8 * texture(tx, ty, 51);
    Vec e = Vec{0.02, 0.035, 0.09} * (0.4 * t);
    static constexpr double lamps[3][2] = {{0.2, 0.25}, {0.55, 0.3}, {0.85, 0.22}};
    for (const auto& l : lamps) {
        e = e + Vec{1.0, 0.68, 0.25} * (40.0 * blob(u, v, l[0], l[1], 0.05));
        if (blob(u, v, l[0], l[1], 0.02) > 0.5) e = Vec{1.0, 0.8, 0.45} * 400.0;
        if (v > 0.7) e = e + Vec{1.0, 0.7, 0.3} * (1.5 * t * blob(u, v, l[0], 0.85, 0.15));
    }
    if (inside(u, v, 0.3, 0.45, 0.45, 0.55)) e = Vec{0.9, 0.05, 0.6} * (6.0 * (0.8 + 0.2 * t));
    if (inside(u, v, 0.62, 0.5, 0.8, 0.58)) e = Vec{0.05, 0.8, 0.9} * (5.0 * (0.8 + 0.2 * t));
    if (inside(u, v, 0.05, 0.6, 0.2, 0.7)) e = Vec{0.6, 0.08, 0.05} * (0.3 * t);
    return e;
}

}  // namespace

std::vector<Scene> all_scenes() { return {Scene::sky, Scene::window, Scene::checker, Scene::sunset, Scene::night}; }

std::string scene_name(Scene s) {
    switch (s) {
        case Scene::sky: return "sky";
        case Scene::window: return "window";
        case Scene::checker: return "checker";
        case Scene::sunset: return "sunset";
        case Scene::night: return "night";
    }
    return "?";
}

RadianceMap make_scene(Scene s, std::size_t width, std::size_t height) {
    switch (s) {
        case Scene::sky: return build(width, height, sky);
        case Scene::window: return build(width, height, window);
        case Scene::checker: return build(width, height, checker);
        case Scene::sunset: return build(width, height, sunset);
        case Scene::night: return build(width, height, night);
    }
    throw InputError("unknown scene");
}

RadianceMap make_ramp_field(std::size_t width, std::size_t height) {
    static constexpr Vec bands[6] = {
        {1.0, 1.0, 1.0}, {1.0, 0.45, 0.3}, {0.4, 1.0, 0.35}, {0.35, 0.45, 1.0}, {1.0, 0.9, 0.3}, {0.9, 0.35, 0.9},
    };
    return build(width, height, [](double u, double v, double tx, double ty) {
        const int band = std::min(5, static_cast<int>(v * 6.0));
        const double lum = std::exp2(-5.0 + 9.0 * u);
        return bands[band] * (lum * (0.95 + 0.1 * noise(tx, ty, 3.0, 61)));
    });
}

LdrImage random_image(std::mt19937_64& rng, std::size_t width, std::size_t height) {
    std::uniform_real_distribution<double> d(0.0, 1.0);
    std::vector<Rgb> px(width * height);
    for (auto& p : px) p = {d(rng), d(rng), d(rng)};
    return LdrImage(width, height, std::move(px));
}

RadianceMap random_radiance(std::mt19937_64& rng, std::size_t width, std::size_t height, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<Rgb> px(width * height);
    for (auto& p : px) p = {d(rng), d(rng), d(rng)};
    return RadianceMap(width, height, std::move(px));
}

std::filesystem::path scratch_dir(const std::string& name) {
    const std::filesystem::path dir = std::filesystem::path(HUECOMP_TEST_TMP) / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace huecomp::testing
