#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace huecomp {

/// Single-channel float plane, row-major.
struct Plane {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<double> data;

    Plane() = default;
    Plane(std::size_t w, std::size_t h, double fill = 0.0) : width(w), height(h), data(w * h, fill) {}

    double& at(std::size_t x, std::size_t y) { return data[y * width + x]; }
    double at(std::size_t x, std::size_t y) const { return data[y * width + x]; }
};

/// Reflect-101 border index (…2 1 | 0 1 2 … n-1 | n-2 …) for arbitrary offsets.
std::size_t reflect101(std::ptrdiff_t i, std::size_t n);

/// floor(log2(min(w, h))): the number of halvings until the short side reaches 1.
int auto_depth(std::size_t width, std::size_t height);

/// Blur with the (1,4,6,4,1)/16 binomial and keep even samples; size ceil(n/2).
Plane pyr_down(const Plane& src);

/// Inverse-direction resampling onto a width x height grid, normalized so
/// constants stay constant at every border.
Plane pyr_up(const Plane& src, std::size_t width, std::size_t height);

std::vector<Plane> gaussian_pyramid(const Plane& base, int depth);
std::vector<Plane> laplacian_pyramid(const Plane& base, int depth);
Plane collapse(std::span<const Plane> laplacian);

namespace reference {
Plane pyr_down(const Plane& src);
Plane pyr_up(const Plane& src, std::size_t width, std::size_t height);
}

}  // namespace huecomp
