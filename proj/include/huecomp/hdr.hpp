#pragma once

#include <optional>
#include <span>

#include "huecomp/core.hpp"

namespace huecomp {

/// Weighted log-radiance merge. Per pixel and channel:
///   y = sum_j w(z_j)(g^-1(z_j) - ln dt_j) / sum_j w(z_j)
/// with hat weights on that channel's code. Where every weight is zero the
/// middle exposure alone is used: g^-1(z_mid) - ln dt_mid.
RadianceMap recover_radiance(const ExposureStack& stack, const CrfTable& crf);

/// Lower-level form over already sorted images and their log exposure times.
/// Accepts a single exposure. `fallback` indexes the exposure used where all weights vanish.
RadianceMap recover_radiance(std::span<const LdrImage> images, std::span<const double> log_times,
                             const CrfTable& crf, std::size_t fallback);

/// Luminance code the median scene luminance lands on in the EV 0 render.
inline constexpr int kAnchorCode = 118;

/// Forward camera curve used to render synthetic exposures:
///   z = clip((E · 2^EV · scale)^(1/gamma), 0, 1)
/// When scale is unset it is anchored with exposure_anchor().
struct RenderCurve {
    double gamma = 2.2;
    std::optional<double> scale;
};

/// Scale s that maps the median linear luminance of `scene` to code kAnchorCode after gamma encoding.
double exposure_anchor(const RadianceMap& scene, double gamma = 2.2);

/// Renders one 8-bit quantized exposure of `scene`.
LdrImage render_exposure(const RadianceMap& scene, double ev, double scale, double gamma);

/// Renders every EV in `evs` (quantized to 8-bit codes, then dequantized).
ExposureStack synth_stack(const RadianceMap& scene, std::span<const double> evs, const RenderCurve& curve = {});

/// Display-referred ground truth: anchored EV 0 render without quantization.
LdrImage render_reference(const RadianceMap& scene, double gamma = 2.2);

namespace reference {
RadianceMap recover_radiance(std::span<const LdrImage> images, std::span<const double> log_times,
                             const CrfTable& crf, std::size_t fallback);
}

}  // namespace huecomp
