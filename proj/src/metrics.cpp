#include "huecomp/metrics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "metrics_kernel.hpp"

namespace huecomp {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double srgb_decode(double v) { return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4); }

double lab_f(double t) {
    constexpr double delta = 6.0 / 29.0;
    return t > delta * delta * delta ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

// sRGB primaries to XYZ under D65; the row sums are the reference white.
constexpr double kM[3][3] = {
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
};

double hue_angle_deg(double b, double a_prime) {
    if (b == 0.0 && a_prime == 0.0) return 0.0;
    double h = std::atan2(b, a_prime) / kDeg;
    if (h < 0.0) h += 360.0;
    return h;
}

}  // namespace

Lab srgb_to_lab(const Rgb& x) {
    for (double v : x) {
        if (!(v >= 0.0 && v <= 1.0)) throw InputError("srgb_to_lab: channel value outside [0,1]");
    }
    const double lin[3] = {srgb_decode(x[0]), srgb_decode(x[1]), srgb_decode(x[2])};
    double f[3];
    for (int r = 0; r < 3; ++r) {
        const double white = kM[r][0] + kM[r][1] + kM[r][2];
        const double xyz = kM[r][0] * lin[0] + kM[r][1] * lin[1] + kM[r][2] * lin[2];
        f[r] = lab_f(xyz / white);
    }
    return {116.0 * f[1] - 16.0, 500.0 * (f[0] - f[1]), 200.0 * (f[1] - f[2])};
}

Ciede2000Terms ciede2000(const Lab& p, const Lab& q) {
    const double c1 = std::hypot(p.a, p.b);
    const double c2 = std::hypot(q.a, q.b);
    const double c_bar7 = std::pow((c1 + c2) / 2.0, 7.0);
    const double pow25_7 = 6103515625.0;  // 25^7
    const double g = 0.5 * (1.0 - std::sqrt(c_bar7 / (c_bar7 + pow25_7)));

    const double a1 = (1.0 + g) * p.a;
    const double a2 = (1.0 + g) * q.a;
    const double cp1 = std::hypot(a1, p.b);
    const double cp2 = std::hypot(a2, q.b);
    const double hp1 = hue_angle_deg(p.b, a1);
    const double hp2 = hue_angle_deg(q.b, a2);
    const double cprod = cp1 * cp2;

    double dh = 0.0;
    if (cprod != 0.0) {
        dh = hp2 - hp1;
        if (dh > 180.0) {
            dh -= 360.0;
        } else if (dh < -180.0) {
            dh += 360.0;
        }
    }

    Ciede2000Terms t;
    t.dL = q.L - p.L;
    t.dC = cp2 - cp1;
    t.dH = 2.0 * std::sqrt(cprod) * std::sin(dh * kDeg / 2.0);

    const double l_bar = (p.L + q.L) / 2.0;
    const double cp_bar = (cp1 + cp2) / 2.0;
    double h_bar = hp1 + hp2;
    if (cprod != 0.0) {
        if (std::abs(hp1 - hp2) <= 180.0) {
            h_bar /= 2.0;
        } else if (hp1 + hp2 < 360.0) {
            h_bar = (h_bar + 360.0) / 2.0;
        } else {
            h_bar = (h_bar - 360.0) / 2.0;
        }
    }

    const double tt = 1.0 - 0.17 * std::cos((h_bar - 30.0) * kDeg) + 0.24 * std::cos(2.0 * h_bar * kDeg) +
                      0.32 * std::cos((3.0 * h_bar + 6.0) * kDeg) - 0.20 * std::cos((4.0 * h_bar - 63.0) * kDeg);
    const double d_theta = 30.0 * std::exp(-((h_bar - 275.0) / 25.0) * ((h_bar - 275.0) / 25.0));
    const double cp_bar7 = std::pow(cp_bar, 7.0);
    const double rc = 2.0 * std::sqrt(cp_bar7 / (cp_bar7 + pow25_7));
    const double l50 = (l_bar - 50.0) * (l_bar - 50.0);
    t.SL = 1.0 + 0.015 * l50 / std::sqrt(20.0 + l50);
    t.SC = 1.0 + 0.045 * cp_bar;
    t.SH = 1.0 + 0.015 * cp_bar * tt;
    t.RT = -std::sin(2.0 * d_theta * kDeg) * rc;

    const double l = t.dL / t.SL;
    const double c = t.dC / t.SC;
    const double h = t.dH / t.SH;
    t.dE = std::sqrt(l * l + c * c + h * h + t.RT * c * h);
    return t;
}

std::string_view to_string(HueVariant v) { return v == HueVariant::raw_dHp ? "raw_dHp" : "scaled_dHp"; }

HueVariant parse_hue_variant(std::string_view name) {
    if (name == "raw_dHp") return HueVariant::raw_dHp;
    if (name == "scaled_dHp") return HueVariant::scaled_dHp;
    throw InputError("unknown metric variant '" + std::string(name) + "' (expected raw_dHp or scaled_dHp)");
}

double ciede2000_hue_diff(const Lab& p, const Lab& q, HueVariant variant) {
    const Ciede2000Terms t = ciede2000(p, q);
    const double dh = std::abs(t.dH);
    return variant == HueVariant::raw_dHp ? dh : dh / t.SH;
}

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace detail {

void check_same_shape(const LdrImage& image, const LdrImage& reference) {
    if (!image.same_shape(reference.width(), reference.height())) {
        throw InputError("image_hue_diff: images are " + std::to_string(image.width()) + "x" +
                         std::to_string(image.height()) + " and " + std::to_string(reference.width()) + "x" +
                         std::to_string(reference.height()));
    }
}

bool touches_clip(const Rgb& p) {
    for (double v : p) {
        if (v <= 0.0 || v >= 1.0) return true;
    }
    return false;
}

double pixel_hue_diff(const Rgb& a, const Rgb& b, const HueDiffOptions& opts) {
    if (opts.clip_mask && (touches_clip(a) || touches_clip(b))) return std::nan("");
    return ciede2000_hue_diff(srgb_to_lab(a), srgb_to_lab(b), opts.variant);
}

HueDiffReport summarize(std::span<const double> per_pixel, HueVariant variant) {
    std::vector<double> kept;
    kept.reserve(per_pixel.size());
    for (double v : per_pixel) {
        if (!std::isnan(v)) kept.push_back(v);
    }
    HueDiffReport r;
    r.variant = variant;
    r.pixels = kept.size();
    r.excluded = per_pixel.size() - kept.size();
    r.mean_dH = kept.empty() ? 0.0 : pairwise_sum(kept) / static_cast<double>(kept.size());
    return r;
}

}  // namespace detail

HueDiffReport image_hue_diff(const LdrImage& image, const LdrImage& reference, const HueDiffOptions& opts) {
    detail::check_same_shape(image, reference);
    std::vector<double> values(image.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(values.size()); ++i) {
        values[i] = detail::pixel_hue_diff(image[i], reference[i], opts);
    }
    return detail::summarize(values, opts.variant);
}

}  // namespace huecomp
