#include "huecomp/fusion.hpp"

#include <algorithm>
#include <cmath>

#include "fusion_kernel.hpp"

namespace huecomp {

namespace detail {

void validate(const FusionWeights& w) {
    const bool finite = std::isfinite(w.contrast) && std::isfinite(w.saturation) && std::isfinite(w.exposedness);
    if (!finite || w.contrast < 0.0 || w.saturation < 0.0 || w.exposedness < 0.0) {
        throw InputError("fusion: weight exponents must be finite and >= 0");
    }
    if (w.contrast == 0.0 && w.saturation == 0.0 && w.exposedness == 0.0) {
        throw InputError("fusion: at least one weight exponent must be positive");
    }
    if (!(w.sigma > 0.0)) throw InputError("fusion: well-exposedness sigma must be positive");
}

int resolve_depth(const FusionWeights& w, std::size_t width, std::size_t height) {
    const int cap = auto_depth(width, height);
    return w.depth < 0 ? cap : std::min(w.depth, cap);
}

double raw_weight(const LdrImage& img, std::size_t x, std::size_t y, const FusionWeights& w) {
    const std::size_t width = img.width();
    const std::size_t height = img.height();
    const auto sx = static_cast<std::ptrdiff_t>(x);
    const auto sy = static_cast<std::ptrdiff_t>(y);
    const double centre = luma(img.at(x, y));
    const double lap = luma(img.at(reflect101(sx - 1, width), y)) + luma(img.at(reflect101(sx + 1, width), y)) +
                       luma(img.at(x, reflect101(sy - 1, height))) + luma(img.at(x, reflect101(sy + 1, height))) -
                       4.0 * centre;
    const double contrast = std::abs(lap);

    const Rgb& p = img.at(x, y);
    const double mean = (p[0] + p[1] + p[2]) / 3.0;
    const double var = ((p[0] - mean) * (p[0] - mean) + (p[1] - mean) * (p[1] - mean) +
                        (p[2] - mean) * (p[2] - mean)) / 3.0;
    const double saturation = std::sqrt(var);

    const double two_s2 = 2.0 * w.sigma * w.sigma;
    double exposed = 1.0;
    for (double v : p) exposed *= std::exp(-(v - 0.5) * (v - 0.5) / two_s2);

    return std::pow(contrast, w.contrast) * std::pow(saturation, w.saturation) *
               std::pow(exposed, w.exposedness) + kWeightFloor;
}

std::array<Plane, 3> split_channels(const LdrImage& img) {
    std::array<Plane, 3> out;
    for (auto& p : out) p = Plane(img.width(), img.height());
    for (std::size_t i = 0; i < img.size(); ++i) {
        for (int c = 0; c < 3; ++c) out[c].data[i] = img[i][c];
    }
    return out;
}

LdrImage merge_channels(const std::array<Plane, 3>& planes, FuseStats* stats) {
    FuseStats s;
    std::vector<Rgb> px(planes[0].data.size());
    for (std::size_t i = 0; i < px.size(); ++i) {
        for (int c = 0; c < 3; ++c) {
            const double v = planes[c].data[i];
            const double clamped = std::clamp(v, 0.0, 1.0);
            if (clamped != v) {
                ++s.clamped;
                s.max_clamp = std::max(s.max_clamp, std::abs(v - clamped));
            }
            px[i][c] = clamped;
        }
    }
    if (stats) *stats = s;
    return LdrImage(planes[0].width, planes[0].height, std::move(px));
}

}  // namespace detail

std::vector<Plane> quality_weights(const ExposureStack& stack, const FusionWeights& w) {
    detail::validate(w);
    const std::size_t width = stack.width();
    const std::size_t height = stack.height();
    const std::size_t n = stack.count();
    std::vector<Plane> maps(n, Plane(width, height));

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t sy = 0; sy < static_cast<std::ptrdiff_t>(height); ++sy) {
        const auto y = static_cast<std::size_t>(sy);
        for (std::size_t x = 0; x < width; ++x) {
            double total = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double v = detail::raw_weight(stack.image(j), x, y, w);
                maps[j].at(x, y) = v;
                total += v;
            }
            for (std::size_t j = 0; j < n; ++j) maps[j].at(x, y) /= total;
        }
    }
    return maps;
}

LdrImage fuse(const ExposureStack& stack, const FusionWeights& w, FuseStats* stats) {
    const std::vector<Plane> weights = quality_weights(stack, w);
    const int depth = detail::resolve_depth(w, stack.width(), stack.height());

    std::array<std::vector<Plane>, 3> blended;
    for (std::size_t j = 0; j < stack.count(); ++j) {
        const std::vector<Plane> gw = gaussian_pyramid(weights[j], depth);
        const std::array<Plane, 3> channels = detail::split_channels(stack.image(j));
        for (int c = 0; c < 3; ++c) {
            const std::vector<Plane> lap = laplacian_pyramid(channels[c], depth);
            if (blended[c].empty()) {
                for (const Plane& level : lap) blended[c].emplace_back(level.width, level.height);
            }
            for (int l = 0; l <= depth; ++l) {
                auto& dst = blended[c][l].data;
                const auto& a = gw[l].data;
                const auto& b = lap[l].data;
#pragma omp parallel for schedule(static)
                for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(dst.size()); ++i) dst[i] += a[i] * b[i];
            }
        }
    }

    std::array<Plane, 3> out;
    for (int c = 0; c < 3; ++c) out[c] = collapse(blended[c]);
    return detail::merge_channels(out, stats);
}

}  // namespace huecomp
