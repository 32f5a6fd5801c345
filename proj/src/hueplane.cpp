#include "huecomp/hueplane.hpp"

#include <algorithm>
#include <cmath>

namespace huecomp {

std::optional<Rgb> hue_of(const Rgb& x) {
    const auto [lo, hi] = std::minmax({x[0], x[1], x[2]});
    if (!(hi > lo)) return std::nullopt;
    const double range = hi - lo;
    return Rgb{(x[0] - lo) / range, (x[1] - lo) / range, (x[2] - lo) / range};
}

std::optional<Rgb> max_sat_color(const Rgb& x) {
    for (double v : x) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw InputError("max_sat_color: channel value " + std::to_string(v) + " outside [0,1]");
        }
    }
    return hue_of(x);
}

HuePlaneCoords decompose(const Rgb& x) {
    const auto c = max_sat_color(x);
    const auto [lo, hi] = std::minmax({x[0], x[1], x[2]});
    HuePlaneCoords h;
    h.white = lo;
    h.black = 1.0 - hi;
    h.chroma = hi - lo;
    if (c) {
        h.color = *c;
        h.defined = true;
    }
    return h;
}

Rgb compensate_pixel(const Rgb& fused, const std::optional<Rgb>& hdr_hue) {
    const HuePlaneCoords f = decompose(fused);
    if (!f.defined || !hdr_hue) return fused;
    Rgb out;
    for (int l = 0; l < 3; ++l) {
        out[l] = std::clamp(f.white + f.chroma * (*hdr_hue)[l], 0.0, 1.0);
    }
    return out;
}

std::optional<Rgb> radiance_hue(const Rgb& log_radiance, const CompensateOptions& opts) {
    const double top = std::max({log_radiance[0], log_radiance[1], log_radiance[2]});
    const double exponent = opts.domain == HueDomain::display_gamma ? 1.0 / opts.gamma : 1.0;
    Rgb v;
    for (int l = 0; l < 3; ++l) v[l] = std::exp((log_radiance[l] - top) * exponent);
    return hue_of(v);
}

namespace {

void check_shapes(const LdrImage& fused, const RadianceMap& hdr) {
    if (!fused.same_shape(hdr.width(), hdr.height())) {
        throw InputError("compensate_image: fused image is " + std::to_string(fused.width()) + "x" +
                         std::to_string(fused.height()) + " but radiance map is " + std::to_string(hdr.width()) +
                         "x" + std::to_string(hdr.height()));
    }
}

void check_options(const CompensateOptions& opts) {
    if (!(opts.gamma > 0.0) || !std::isfinite(opts.gamma)) {
        throw InputError("compensate_image: gamma must be positive");
    }
}

}  // namespace

LdrImage compensate_image(const LdrImage& fused, const RadianceMap& hdr, const CompensateOptions& opts) {
    check_shapes(fused, hdr);
    check_options(opts);
    const auto w = static_cast<std::ptrdiff_t>(fused.width());
    const auto h = static_cast<std::ptrdiff_t>(fused.height());
    std::vector<Rgb> out(fused.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t y = 0; y < h; ++y) {
        for (std::ptrdiff_t x = 0; x < w; ++x) {
            const auto i = static_cast<std::size_t>(y * w + x);
            out[i] = compensate_pixel(fused[i], radiance_hue(hdr[i], opts));
        }
    }
    return LdrImage(fused.width(), fused.height(), std::move(out));
}

}  // namespace huecomp
