#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace huecomp {

/// Bad input, bad usage or a broken precondition. CLI exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File-level failure (unreadable, malformed, unsupported). CLI exit code 2.
class IoError : public InputError {
public:
    using InputError::InputError;
};

/// Numerical failure, e.g. a rank-deficient least-squares system. CLI exit code 3.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One pixel, channels ordered r, g, b.
using Rgb = std::array<double, 3>;

inline constexpr int kDefaultLevels = 256;

/// Maps a channel value in [0,1] to an integer code, rounding half up.
int quantize(double v, int levels = kDefaultLevels);
double dequantize(int code, int levels = kDefaultLevels);

/// Rec. 709 luma weights, shared by fusion contrast, sampling and exposure anchoring.
inline double luma(const Rgb& p) { return 0.2126 * p[0] + 0.7152 * p[1] + 0.0722 * p[2]; }

/// Display-referred image. Every channel is in [0,1]; immutable once built.
class LdrImage {
public:
    LdrImage() = default;
    LdrImage(std::size_t width, std::size_t height, std::vector<Rgb> data);

    /// Uniform image filled with one color.
    static LdrImage filled(std::size_t width, std::size_t height, const Rgb& value);

    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }
    std::size_t size() const { return data_.size(); }

    const Rgb& operator[](std::size_t i) const { return data_[i]; }
    const Rgb& at(std::size_t x, std::size_t y) const { return data_[y * width_ + x]; }
    std::span<const Rgb> pixels() const { return data_; }

    bool same_shape(std::size_t w, std::size_t h) const { return w == width_ && h == height_; }

    friend bool operator==(const LdrImage&, const LdrImage&) = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<Rgb> data_;
};

/// Scene-referred image holding natural-log radiance per channel.
class RadianceMap {
public:
    RadianceMap() = default;
    /// Throws InputError if any value is not finite.
    RadianceMap(std::size_t width, std::size_t height, std::vector<Rgb> log_radiance);

    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }
    std::size_t size() const { return data_.size(); }

    const Rgb& operator[](std::size_t i) const { return data_[i]; }
    const Rgb& at(std::size_t x, std::size_t y) const { return data_[y * width_ + x]; }
    std::span<const Rgb> pixels() const { return data_; }

    /// exp() of pixel i, i.e. linear radiance.
    Rgb linear(std::size_t i) const;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<Rgb> data_;
};

/// Registered LDR exposures sorted by exposure value, with Δt_j = base_time · 2^EV_j.
class ExposureStack {
public:
    /// Sorts by EV. Requires N >= 2, equal dimensions, distinct finite EVs and base_time > 0.
    ExposureStack(std::vector<LdrImage> images, std::vector<double> evs, double base_time = 1.0);

    std::size_t count() const { return images_.size(); }
    std::size_t width() const { return images_.front().width(); }
    std::size_t height() const { return images_.front().height(); }

    const LdrImage& image(std::size_t j) const { return images_[j]; }
    std::span<const LdrImage> images() const { return images_; }
    std::span<const double> evs() const { return evs_; }
    double base_time() const { return base_time_; }

    double exposure_time(std::size_t j) const;
    double log_exposure_time(std::size_t j) const;
    std::vector<double> log_exposure_times() const;

    /// Index of the middle exposure after sorting (N/2).
    std::size_t middle_index() const { return images_.size() / 2; }

private:
    std::vector<LdrImage> images_;
    std::vector<double> evs_;
    double base_time_;
};

/// Inverse camera response g^-1 per channel: code -> log exposure.
/// Each channel is non-decreasing and pinned to zero at the mid code.
class CrfTable {
public:
    CrfTable(std::array<std::vector<double>, 3> channels);

    int levels() const { return static_cast<int>(channels_[0].size()); }
    int mid_code() const { return levels() / 2; }

    double operator()(int channel, int code) const { return channels_[channel][code]; }
    std::span<const double> channel(int c) const { return channels_[c]; }

    friend bool operator==(const CrfTable&, const CrfTable&) = default;

private:
    std::array<std::vector<double>, 3> channels_;
};

}  // namespace huecomp
