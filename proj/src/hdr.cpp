#include "huecomp/hdr.hpp"

#include <algorithm>
#include <cmath>

#include "huecomp/crf.hpp"
#include "merge_kernel.hpp"

namespace huecomp {

namespace detail {

void check_merge_inputs(std::span<const LdrImage> images, std::span<const double> log_times, std::size_t fallback) {
    if (images.empty()) throw InputError("recover_radiance: no exposures");
    if (images.size() != log_times.size()) {
        throw InputError("recover_radiance: " + std::to_string(images.size()) + " images but " +
                         std::to_string(log_times.size()) + " exposure times");
    }
    if (fallback >= images.size()) throw InputError("recover_radiance: fallback index out of range");
    for (std::size_t j = 1; j < images.size(); ++j) {
        if (!images[j].same_shape(images[0].width(), images[0].height())) {
            throw InputError("recover_radiance: image " + std::to_string(j) + " differs in size from image 0");
        }
    }
}

Rgb merge_pixel(std::span<const LdrImage> images, std::span<const double> log_times, const CrfTable& crf,
                std::size_t fallback, std::size_t i) {
    const int levels = crf.levels();
    Rgb y;
    for (int c = 0; c < 3; ++c) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t j = 0; j < images.size(); ++j) {
            const int z = quantize(images[j][i][c], levels);
            const double w = hat_weight(z, levels);
            num += w * (crf(c, z) - log_times[j]);
            den += w;
        }
        if (den > 0.0) {
            y[c] = num / den;
        } else {
            const int z = quantize(images[fallback][i][c], levels);
            y[c] = crf(c, z) - log_times[fallback];
        }
    }
    return y;
}

}  // namespace detail

RadianceMap recover_radiance(std::span<const LdrImage> images, std::span<const double> log_times,
                             const CrfTable& crf, std::size_t fallback) {
    detail::check_merge_inputs(images, log_times, fallback);
    const std::size_t n = images[0].size();
    std::vector<Rgb> out(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        out[i] = detail::merge_pixel(images, log_times, crf, fallback, static_cast<std::size_t>(i));
    }
    return RadianceMap(images[0].width(), images[0].height(), std::move(out));
}

RadianceMap recover_radiance(const ExposureStack& stack, const CrfTable& crf) {
    const std::vector<double> log_times = stack.log_exposure_times();
    return recover_radiance(stack.images(), log_times, crf, stack.middle_index());
}

double exposure_anchor(const RadianceMap& scene, double gamma) {
    if (scene.size() == 0) throw InputError("exposure_anchor: empty radiance map");
    if (!(gamma > 0.0)) throw InputError("exposure_anchor: gamma must be positive");
    std::vector<double> lum(scene.size());
    for (std::size_t i = 0; i < scene.size(); ++i) lum[i] = luma(scene.linear(i));
    auto mid = lum.begin() + static_cast<std::ptrdiff_t>(lum.size() / 2);
    std::nth_element(lum.begin(), mid, lum.end());
    const double target = std::pow(kAnchorCode / 255.0, gamma);
    return target / *mid;
}

namespace {

double encode(double linear, double gamma) { return std::clamp(std::pow(linear, 1.0 / gamma), 0.0, 1.0); }

}  // namespace

LdrImage render_exposure(const RadianceMap& scene, double ev, double scale, double gamma) {
    if (!(gamma > 0.0) || !(scale > 0.0) || !std::isfinite(ev)) {
        throw InputError("render_exposure: gamma and scale must be positive, EV finite");
    }
    const double gain = std::exp2(ev) * scale;
    std::vector<Rgb> out(scene.size());
    for (std::size_t i = 0; i < scene.size(); ++i) {
        const Rgb e = scene.linear(i);
        for (int c = 0; c < 3; ++c) out[i][c] = dequantize(quantize(encode(e[c] * gain, gamma)));
    }
    return LdrImage(scene.width(), scene.height(), std::move(out));
}

ExposureStack synth_stack(const RadianceMap& scene, std::span<const double> evs, const RenderCurve& curve) {
    if (evs.empty()) throw InputError("synth_stack: EV list is empty");
    const double scale = curve.scale ? *curve.scale : exposure_anchor(scene, curve.gamma);
    std::vector<LdrImage> images;
    images.reserve(evs.size());
    for (double ev : evs) images.push_back(render_exposure(scene, ev, scale, curve.gamma));
    return ExposureStack(std::move(images), std::vector<double>(evs.begin(), evs.end()));
}

LdrImage render_reference(const RadianceMap& scene, double gamma) {
    const double scale = exposure_anchor(scene, gamma);
    std::vector<Rgb> out(scene.size());
    for (std::size_t i = 0; i < scene.size(); ++i) {
        const Rgb e = scene.linear(i);
        for (int c = 0; c < 3; ++c) out[i][c] = encode(e[c] * scale, gamma);
    }
    return LdrImage(scene.width(), scene.height(), std::move(out));
}

}  // namespace huecomp
