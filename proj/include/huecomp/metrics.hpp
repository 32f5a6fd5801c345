#pragma once

#include <span>
#include <string_view>

#include "huecomp/core.hpp"

namespace huecomp {

/// CIE L*a*b* relative to D65.
struct Lab {
    double L = 0.0;
    double a = 0.0;
    double b = 0.0;
};

/// sRGB transfer decode, sRGB -> XYZ (D65), XYZ -> L*a*b*.
Lab srgb_to_lab(const Rgb& x);

/// Intermediate terms of the CIEDE2000 difference (kL = kC = kH = 1).
/// dH is the signed hue difference 2 sqrt(C'1 C'2) sin(dh'/2).
struct Ciede2000Terms {
    double dL = 0.0;
    double dC = 0.0;
    double dH = 0.0;
    double SL = 1.0;
    double SC = 1.0;
    double SH = 1.0;
    double RT = 0.0;
    double dE = 0.0;
};

Ciede2000Terms ciede2000(const Lab& p, const Lab& q);

enum class HueVariant {
    raw_dHp,     ///< |dH'|
    scaled_dHp,  ///< |dH'| / S_H
};

std::string_view to_string(HueVariant v);
/// Throws InputError for unknown names.
HueVariant parse_hue_variant(std::string_view name);

/// Hue-difference term of CIEDE2000 between two colors, non-negative.
double ciede2000_hue_diff(const Lab& p, const Lab& q, HueVariant variant = HueVariant::raw_dHp);

struct HueDiffOptions {
    HueVariant variant = HueVariant::raw_dHp;
    /// Skip pixels that have a channel at 0 or 1 in either image.
    bool clip_mask = false;
};

struct HueDiffReport {
    double mean_dH = 0.0;
    std::size_t pixels = 0;
    std::size_t excluded = 0;
    HueVariant variant = HueVariant::raw_dHp;
};

/// Mean per-pixel hue difference. `reference` is the display-rendered ground truth.
HueDiffReport image_hue_diff(const LdrImage& image, const LdrImage& reference, const HueDiffOptions& opts = {});

/// Recursive pairwise summation; fixed association order for any input length.
double pairwise_sum(std::span<const double> values);

namespace reference {
HueDiffReport image_hue_diff(const LdrImage& image, const LdrImage& reference, const HueDiffOptions& opts = {});
}

}  // namespace huecomp
