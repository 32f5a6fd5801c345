#pragma once

#include <optional>

#include "huecomp/core.hpp"

namespace huecomp {

/// Position of a pixel on its constant-hue triangle:
///   x = white·(1,1,1) + black·(0,0,0) + chroma·color
/// with white + black + chroma = 1. `color` is the maximally saturated
/// color of the hue (one component 0, one component 1). For achromatic
/// pixels the hue is undefined, chroma is 0 and color is all zero.
struct HuePlaneCoords {
    double white = 0.0;
    double black = 0.0;
    double chroma = 0.0;
    Rgb color{0.0, 0.0, 0.0};
    bool defined = false;
};

/// (x - min x) / (max x - min x) per channel, or nullopt when max == min.
/// Throws InputError unless x is in [0,1]^3.
std::optional<Rgb> max_sat_color(const Rgb& x);

/// Same formula without the range check. Accepts any finite non-negative
/// triplet, e.g. linear radiance. Invariant under x -> s·x for s > 0.
std::optional<Rgb> hue_of(const Rgb& x);

HuePlaneCoords decompose(const Rgb& x);

/// Replaces the fused pixel's maximally saturated color with `hdr_hue`,
/// keeping its white and chroma weights. Returns the input unchanged when
/// either hue is undefined.
Rgb compensate_pixel(const Rgb& fused, const std::optional<Rgb>& hdr_hue);

/// Which signal the HDR hue is taken from.
enum class HueDomain {
    linear,         ///< exp(log radiance)
    display_gamma,  ///< (exp(log radiance))^(1/gamma)
};

struct CompensateOptions {
    HueDomain domain = HueDomain::linear;
    double gamma = 2.2;
};

/// Hue of one HDR pixel given as log radiance. Overflow-safe: the pixel is
/// rescaled by its own maximum before exponentiation.
std::optional<Rgb> radiance_hue(const Rgb& log_radiance, const CompensateOptions& opts = {});

/// Pixelwise compensate_pixel with the hue taken from `hdr`. Rows run in
/// parallel; the result is bit-identical to reference::compensate_image.
LdrImage compensate_image(const LdrImage& fused, const RadianceMap& hdr, const CompensateOptions& opts = {});

namespace reference {
LdrImage compensate_image(const LdrImage& fused, const RadianceMap& hdr, const CompensateOptions& opts = {});
}

}  // namespace huecomp
