#pragma once

#include <span>

#include "huecomp/metrics.hpp"

namespace huecomp::detail {

void check_same_shape(const LdrImage& image, const LdrImage& reference);

/// NaN marks a pixel excluded by the clip mask.
double pixel_hue_diff(const Rgb& a, const Rgb& b, const HueDiffOptions& opts);

HueDiffReport summarize(std::span<const double> per_pixel, HueVariant variant);

}  // namespace huecomp::detail
