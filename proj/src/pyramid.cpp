#include "huecomp/pyramid.hpp"

#include <algorithm>
#include <bit>

#include "huecomp/core.hpp"

namespace huecomp {

namespace {

constexpr double kTaps[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};

}  // namespace

std::size_t reflect101(std::ptrdiff_t i, std::size_t n) {
    if (n == 1) return 0;
    const auto period = static_cast<std::ptrdiff_t>(2 * (n - 1));
    i %= period;
    if (i < 0) i += period;
    if (i >= static_cast<std::ptrdiff_t>(n)) i = period - i;
    return static_cast<std::size_t>(i);
}

int auto_depth(std::size_t width, std::size_t height) {
    const std::size_t m = std::min(width, height);
    if (m == 0) throw InputError("pyramid: empty plane");
    return static_cast<int>(std::bit_width(m)) - 1;
}

Plane pyr_down(const Plane& src) {
    const std::size_t w = (src.width + 1) / 2;
    const std::size_t h = (src.height + 1) / 2;
    const auto sh = static_cast<std::ptrdiff_t>(src.height);

    // horizontal pass on every source row
    Plane tmp(w, src.height);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t y = 0; y < sh; ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = 0; k < 5; ++k) {
                const auto sx = reflect101(static_cast<std::ptrdiff_t>(2 * x) + k - 2, src.width);
                acc += kTaps[k] * src.at(sx, static_cast<std::size_t>(y));
            }
            tmp.at(x, static_cast<std::size_t>(y)) = acc;
        }
    }

    Plane out(w, h);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t y = 0; y < static_cast<std::ptrdiff_t>(h); ++y) {
        for (std::size_t x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = 0; k < 5; ++k) {
                const auto sy = reflect101(2 * y + k - 2, src.height);
                acc += kTaps[k] * tmp.at(x, sy);
            }
            out.at(x, static_cast<std::size_t>(y)) = acc;
        }
    }
    return out;
}

namespace {

// Taps of the upsampling filter that land on even (source-backed) positions
// of the zero-inserted signal, for one output coordinate.
struct UpTaps {
    std::size_t src[5];
    double weight[5];
    int count = 0;
};

UpTaps up_taps(std::size_t x, std::size_t out_n, std::size_t src_n) {
    UpTaps t;
    double total = 0.0;
    for (int k = 0; k < 5; ++k) {
        const std::size_t p = reflect101(static_cast<std::ptrdiff_t>(x) + k - 2, out_n);
        if (p % 2 != 0) continue;
        t.src[t.count] = std::min(p / 2, src_n - 1);
        t.weight[t.count] = kTaps[k];
        total += kTaps[k];
        ++t.count;
    }
    for (int k = 0; k < t.count; ++k) t.weight[k] /= total;
    return t;
}

}  // namespace

Plane pyr_up(const Plane& src, std::size_t width, std::size_t height) {
    if ((width + 1) / 2 != src.width || (height + 1) / 2 != src.height) {
        throw InputError("pyr_up: target size does not halve to the source size");
    }
    std::vector<UpTaps> xt(width);
    for (std::size_t x = 0; x < width; ++x) xt[x] = up_taps(x, width, src.width);
    std::vector<UpTaps> yt(height);
    for (std::size_t y = 0; y < height; ++y) yt[y] = up_taps(y, height, src.height);

    Plane tmp(width, src.height);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t y = 0; y < static_cast<std::ptrdiff_t>(src.height); ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            const UpTaps& t = xt[x];
            double acc = 0.0;
            for (int k = 0; k < t.count; ++k) acc += t.weight[k] * src.at(t.src[k], static_cast<std::size_t>(y));
            tmp.at(x, static_cast<std::size_t>(y)) = acc;
        }
    }

    Plane out(width, height);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t y = 0; y < static_cast<std::ptrdiff_t>(height); ++y) {
        const UpTaps& t = yt[static_cast<std::size_t>(y)];
        for (std::size_t x = 0; x < width; ++x) {
            double acc = 0.0;
            for (int k = 0; k < t.count; ++k) acc += t.weight[k] * tmp.at(x, t.src[k]);
            out.at(x, static_cast<std::size_t>(y)) = acc;
        }
    }
    return out;
}

std::vector<Plane> gaussian_pyramid(const Plane& base, int depth) {
    std::vector<Plane> levels{base};
    for (int l = 0; l < depth; ++l) levels.push_back(pyr_down(levels.back()));
    return levels;
}

std::vector<Plane> laplacian_pyramid(const Plane& base, int depth) {
    std::vector<Plane> g = gaussian_pyramid(base, depth);
    for (int l = 0; l < depth; ++l) {
        const Plane up = pyr_up(g[l + 1], g[l].width, g[l].height);
        for (std::size_t i = 0; i < up.data.size(); ++i) g[l].data[i] -= up.data[i];
    }
    return g;
}

Plane collapse(std::span<const Plane> laplacian) {
    if (laplacian.empty()) throw InputError("collapse: empty pyramid");
    Plane acc = laplacian.back();
    for (std::size_t l = laplacian.size() - 1; l-- > 0;) {
        Plane up = pyr_up(acc, laplacian[l].width, laplacian[l].height);
        for (std::size_t i = 0; i < up.data.size(); ++i) up.data[i] += laplacian[l].data[i];
        acc = std::move(up);
    }
    return acc;
}

}  // namespace huecomp
