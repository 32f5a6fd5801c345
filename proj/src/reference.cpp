// Serial reference implementations. They favour the textbook form
// (direct 2D filtering, one plain loop per image) and are kept to check the
// OpenMP kernels and to benchmark against them.

#include <cmath>

#include "fusion_kernel.hpp"
#include "huecomp/fusion.hpp"
#include "huecomp/hdr.hpp"
#include "huecomp/hueplane.hpp"
#include "huecomp/metrics.hpp"
#include "huecomp/pyramid.hpp"
#include "merge_kernel.hpp"
#include "metrics_kernel.hpp"

namespace huecomp::reference {

namespace {

constexpr double kTaps[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};

std::vector<Plane> build_gaussian(const Plane& base, int depth) {
    std::vector<Plane> levels{base};
    for (int l = 0; l < depth; ++l) levels.push_back(reference::pyr_down(levels.back()));
    return levels;
}

std::vector<Plane> build_laplacian(const Plane& base, int depth) {
    std::vector<Plane> g = build_gaussian(base, depth);
    for (int l = 0; l < depth; ++l) {
        const Plane up = reference::pyr_up(g[l + 1], g[l].width, g[l].height);
        for (std::size_t i = 0; i < up.data.size(); ++i) g[l].data[i] -= up.data[i];
    }
    return g;
}

Plane collapse_levels(const std::vector<Plane>& lap) {
    Plane acc = lap.back();
    for (std::size_t l = lap.size() - 1; l-- > 0;) {
        Plane up = reference::pyr_up(acc, lap[l].width, lap[l].height);
        for (std::size_t i = 0; i < up.data.size(); ++i) up.data[i] += lap[l].data[i];
        acc = std::move(up);
    }
    return acc;
}

}  // namespace

Plane pyr_down(const Plane& src) {
    Plane out((src.width + 1) / 2, (src.height + 1) / 2);
    for (std::size_t y = 0; y < out.height; ++y) {
        for (std::size_t x = 0; x < out.width; ++x) {
            double acc = 0.0;
            for (int ky = 0; ky < 5; ++ky) {
                for (int kx = 0; kx < 5; ++kx) {
                    const auto sx = reflect101(static_cast<std::ptrdiff_t>(2 * x) + kx - 2, src.width);
                    const auto sy = reflect101(static_cast<std::ptrdiff_t>(2 * y) + ky - 2, src.height);
                    acc += kTaps[ky] * kTaps[kx] * src.at(sx, sy);
                }
            }
            out.at(x, y) = acc;
        }
    }
    return out;
}

Plane pyr_up(const Plane& src, std::size_t width, std::size_t height) {
    if ((width + 1) / 2 != src.width || (height + 1) / 2 != src.height) {
        throw InputError("pyr_up: target size does not halve to the source size");
    }
    Plane out(width, height);
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            double acc = 0.0;
            double norm = 0.0;
            for (int ky = 0; ky < 5; ++ky) {
                for (int kx = 0; kx < 5; ++kx) {
                    const auto px = reflect101(static_cast<std::ptrdiff_t>(x) + kx - 2, width);
                    const auto py = reflect101(static_cast<std::ptrdiff_t>(y) + ky - 2, height);
                    if (px % 2 != 0 || py % 2 != 0) continue;
                    acc += kTaps[ky] * kTaps[kx] * src.at(px / 2, py / 2);
                    norm += kTaps[ky] * kTaps[kx];
                }
            }
            out.at(x, y) = acc / norm;
        }
    }
    return out;
}

LdrImage compensate_image(const LdrImage& fused, const RadianceMap& hdr, const CompensateOptions& opts) {
    if (!fused.same_shape(hdr.width(), hdr.height())) {
        throw InputError("compensate_image: fused image and radiance map differ in size");
    }
    if (!(opts.gamma > 0.0)) throw InputError("compensate_image: gamma must be positive");
    std::vector<Rgb> out(fused.size());
    for (std::size_t i = 0; i < fused.size(); ++i) out[i] = compensate_pixel(fused[i], radiance_hue(hdr[i], opts));
    return LdrImage(fused.width(), fused.height(), std::move(out));
}

RadianceMap recover_radiance(std::span<const LdrImage> images, std::span<const double> log_times,
                             const CrfTable& crf, std::size_t fallback) {
    detail::check_merge_inputs(images, log_times, fallback);
    std::vector<Rgb> out(images[0].size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::merge_pixel(images, log_times, crf, fallback, i);
    return RadianceMap(images[0].width(), images[0].height(), std::move(out));
}

std::vector<Plane> quality_weights(const ExposureStack& stack, const FusionWeights& w) {
    detail::validate(w);
    std::vector<Plane> maps;
    for (std::size_t j = 0; j < stack.count(); ++j) {
        Plane m(stack.width(), stack.height());
        for (std::size_t y = 0; y < stack.height(); ++y) {
            for (std::size_t x = 0; x < stack.width(); ++x) m.at(x, y) = detail::raw_weight(stack.image(j), x, y, w);
        }
        maps.push_back(std::move(m));
    }
    for (std::size_t i = 0; i < stack.image(0).size(); ++i) {
        double total = 0.0;
        for (const Plane& m : maps) total += m.data[i];
        for (Plane& m : maps) m.data[i] /= total;
    }
    return maps;
}

LdrImage fuse(const ExposureStack& stack, const FusionWeights& w) {
    const std::vector<Plane> weights = reference::quality_weights(stack, w);
    const int depth = detail::resolve_depth(w, stack.width(), stack.height());
    std::array<Plane, 3> out;
    for (int c = 0; c < 3; ++c) {
        std::vector<Plane> blended;
        for (std::size_t j = 0; j < stack.count(); ++j) {
            const std::vector<Plane> gw = build_gaussian(weights[j], depth);
            const std::vector<Plane> lap = build_laplacian(detail::split_channels(stack.image(j))[c], depth);
            if (blended.empty()) {
                for (const Plane& level : lap) blended.emplace_back(level.width, level.height);
            }
            for (int l = 0; l <= depth; ++l) {
                for (std::size_t i = 0; i < blended[l].data.size(); ++i) {
                    blended[l].data[i] += gw[l].data[i] * lap[l].data[i];
                }
            }
        }
        out[c] = collapse_levels(blended);
    }
    return detail::merge_channels(out, nullptr);
}

HueDiffReport image_hue_diff(const LdrImage& image, const LdrImage& ref, const HueDiffOptions& opts) {
    detail::check_same_shape(image, ref);
    std::vector<double> values(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) values[i] = detail::pixel_hue_diff(image[i], ref[i], opts);
    return detail::summarize(values, opts.variant);
}

}  // namespace huecomp::reference
