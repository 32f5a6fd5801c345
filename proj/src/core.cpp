#include "huecomp/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace huecomp {

int quantize(double v, int levels) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw InputError("quantize: value " + std::to_string(v) + " outside [0,1]");
    }
    return static_cast<int>(std::floor(v * (levels - 1) + 0.5));
}

double dequantize(int code, int levels) {
    if (code < 0 || code >= levels) {
        throw InputError("dequantize: code " + std::to_string(code) + " outside [0," +
                         std::to_string(levels - 1) + "]");
    }
    return static_cast<double>(code) / (levels - 1);
}

LdrImage::LdrImage(std::size_t width, std::size_t height, std::vector<Rgb> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (data_.size() != width_ * height_) {
        throw InputError("LdrImage: data length " + std::to_string(data_.size()) + " != " +
                         std::to_string(width_) + "x" + std::to_string(height_));
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        for (double v : data_[i]) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw InputError("LdrImage: pixel " + std::to_string(i) + " has channel value " +
                                 std::to_string(v) + " outside [0,1]");
            }
        }
    }
}

LdrImage LdrImage::filled(std::size_t width, std::size_t height, const Rgb& value) {
    return LdrImage(width, height, std::vector<Rgb>(width * height, value));
}

RadianceMap::RadianceMap(std::size_t width, std::size_t height, std::vector<Rgb> log_radiance)
    : width_(width), height_(height), data_(std::move(log_radiance)) {
    if (data_.size() != width_ * height_) {
        throw InputError("RadianceMap: data length " + std::to_string(data_.size()) + " != " +
                         std::to_string(width_) + "x" + std::to_string(height_));
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        for (double v : data_[i]) {
            if (!std::isfinite(v)) {
                throw InputError("RadianceMap: non-finite log radiance at pixel " + std::to_string(i));
            }
        }
    }
}

Rgb RadianceMap::linear(std::size_t i) const {
    const Rgb& y = data_[i];
    return {std::exp(y[0]), std::exp(y[1]), std::exp(y[2])};
}

ExposureStack::ExposureStack(std::vector<LdrImage> images, std::vector<double> evs, double base_time)
    : base_time_(base_time) {
    if (images.size() != evs.size()) {
        throw InputError("ExposureStack: " + std::to_string(images.size()) + " images but " +
                         std::to_string(evs.size()) + " exposure values");
    }
    if (images.size() < 2) {
        throw InputError("ExposureStack: need at least 2 exposures, got " + std::to_string(images.size()));
    }
    if (!(base_time > 0.0) || !std::isfinite(base_time)) {
        throw InputError("ExposureStack: base_time must be positive and finite");
    }
    for (std::size_t j = 0; j < images.size(); ++j) {
        if (!std::isfinite(evs[j])) {
            throw InputError("ExposureStack: exposure value " + std::to_string(j) + " is not finite");
        }
        if (!images[j].same_shape(images[0].width(), images[0].height())) {
            throw InputError("ExposureStack: image " + std::to_string(j) + " is " +
                             std::to_string(images[j].width()) + "x" + std::to_string(images[j].height()) +
                             ", expected " + std::to_string(images[0].width()) + "x" +
                             std::to_string(images[0].height()));
        }
    }
    if (images[0].size() == 0) {
        throw InputError("ExposureStack: images are empty");
    }

    std::vector<std::size_t> order(images.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return evs[a] < evs[b]; });
    images_.reserve(images.size());
    evs_.reserve(images.size());
    for (std::size_t k : order) {
        if (!evs_.empty() && !(evs[k] > evs_.back())) {
            throw InputError("ExposureStack: duplicate exposure value " + std::to_string(evs[k]));
        }
        images_.push_back(std::move(images[k]));
        evs_.push_back(evs[k]);
    }
}

double ExposureStack::exposure_time(std::size_t j) const { return base_time_ * std::exp2(evs_[j]); }

double ExposureStack::log_exposure_time(std::size_t j) const {
    return std::log(base_time_) + evs_[j] * std::numbers::ln2;
}

std::vector<double> ExposureStack::log_exposure_times() const {
    std::vector<double> out(count());
    for (std::size_t j = 0; j < count(); ++j) out[j] = log_exposure_time(j);
    return out;
}

CrfTable::CrfTable(std::array<std::vector<double>, 3> channels) : channels_(std::move(channels)) {
    const std::size_t n = channels_[0].size();
    if (n < 4) throw InputError("CrfTable: need at least 4 levels");
    for (int c = 0; c < 3; ++c) {
        const auto& t = channels_[c];
        if (t.size() != n) throw InputError("CrfTable: channels have different lengths");
        for (std::size_t z = 0; z < n; ++z) {
            if (!std::isfinite(t[z])) {
                throw InputError("CrfTable: non-finite entry at channel " + std::to_string(c) + " code " +
                                 std::to_string(z));
            }
            if (z > 0 && t[z] < t[z - 1]) {
                throw InputError("CrfTable: channel " + std::to_string(c) + " decreases at code " +
                                 std::to_string(z));
            }
        }
        if (t[n / 2] != 0.0) {
            throw InputError("CrfTable: channel " + std::to_string(c) + " is not zero at the mid code");
        }
    }
}

}  // namespace huecomp
