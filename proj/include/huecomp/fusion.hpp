#pragma once

#include <vector>

#include "huecomp/core.hpp"
#include "huecomp/pyramid.hpp"

namespace huecomp {

/// Exposure fusion parameters: exponents on the contrast, saturation and
/// well-exposedness measures, the well-exposedness spread, and pyramid depth
/// (negative = auto, floor(log2(min side))).
struct FusionWeights {
    double contrast = 1.0;
    double saturation = 1.0;
    double exposedness = 1.0;
    double sigma = 0.2;
    int depth = -1;
};

inline constexpr double kWeightFloor = 1e-12;

/// Per-image weight maps, normalized so that every pixel's weights sum to 1.
std::vector<Plane> quality_weights(const ExposureStack& stack, const FusionWeights& w = {});

struct FuseStats {
    double max_clamp = 0.0;       ///< largest distance clamped back into [0,1]
    std::size_t clamped = 0;      ///< channel values that needed clamping
};

/// Mertens-style fusion: Laplacian pyramids of the exposures blended by
/// Gaussian pyramids of their weights, collapsed and clamped to [0,1].
LdrImage fuse(const ExposureStack& stack, const FusionWeights& w = {}, FuseStats* stats = nullptr);

namespace reference {
std::vector<Plane> quality_weights(const ExposureStack& stack, const FusionWeights& w = {});
LdrImage fuse(const ExposureStack& stack, const FusionWeights& w = {});
}

}  // namespace huecomp
