#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "huecomp/core.hpp"

namespace huecomp {

struct CrfSolveConfig {
    int samples = 100;      ///< pixels entering the least-squares system
    double lambda = 50.0;   ///< smoothness weight on the second difference of g^-1
    std::uint64_t seed = 0; ///< tie-break order among pixels of equal sampling code
    int levels = kDefaultLevels;
};

/// Hat weight: z - z_min below the mid-range, z_max - z above it. Zero at both ends.
double hat_weight(int code, int levels = kDefaultLevels);

/// Stratified deterministic sample of spatial indices. Pixels of the middle
/// exposure are ordered by quantized luma (ties broken by a seeded key) and
/// picked at evenly spaced ranks.
std::vector<std::size_t> sample_pixels(const ExposureStack& stack, const CrfSolveConfig& cfg);

/// Least-squares isotonic (non-decreasing) fit with unit weights via pool-adjacent-violators.
std::vector<double> isotonic_nondecreasing(std::span<const double> values);

/// Estimates g^-1 per channel:
///   minimize  sum_ij [w(z_ij)(g(z_ij) - ln E_i - ln dt_j)]^2
///           + sum_z  [lambda w(z)(g(z-1) - 2g(z) + g(z+1))]^2
///   s.t.      g(mid) = 0,
/// solved by column-pivoting Householder QR, then projected onto
/// non-decreasing tables and re-pinned at the mid code.
/// Throws SolverError when the system is underdetermined or rank deficient.
CrfTable estimate_inverse_crf(const ExposureStack& stack, const CrfSolveConfig& cfg = {});

}  // namespace huecomp
