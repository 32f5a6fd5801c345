#pragma once

#include <span>

#include "huecomp/core.hpp"

namespace huecomp::detail {

void check_merge_inputs(std::span<const LdrImage> images, std::span<const double> log_times, std::size_t fallback);

/// Weighted merge of pixel i across all exposures, per channel.
Rgb merge_pixel(std::span<const LdrImage> images, std::span<const double> log_times, const CrfTable& crf,
                std::size_t fallback, std::size_t i);

}  // namespace huecomp::detail
