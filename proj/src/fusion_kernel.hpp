#pragma once

#include <array>

#include "huecomp/fusion.hpp"

namespace huecomp::detail {

void validate(const FusionWeights& w);
int resolve_depth(const FusionWeights& w, std::size_t width, std::size_t height);

/// C^wc · S^ws · E^we + floor for one pixel of one exposure, before normalization.
double raw_weight(const LdrImage& img, std::size_t x, std::size_t y, const FusionWeights& w);

std::array<Plane, 3> split_channels(const LdrImage& img);
LdrImage merge_channels(const std::array<Plane, 3>& planes, FuseStats* stats);

}  // namespace huecomp::detail
