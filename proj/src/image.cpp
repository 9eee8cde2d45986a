#include "vdpost/image.hpp"

#include <algorithm>
#include <cmath>

namespace vdpost {

SaliencyImage::SaliencyImage(Grid<double> values) : grid_(std::move(values)) {
    if (grid_.empty()) {
        throw DimensionError("saliency image is empty");
    }
    for (double v : grid_.pixels()) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw ParameterError("saliency values must lie in [0, 1]");
        }
    }
}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> labels)
    : grid_(width, height, std::move(labels)) {
    for (auto& v : grid_.pixels()) {
        v = v != 0 ? 1 : 0;
    }
}

std::size_t BinaryMask::count() const noexcept {
    return static_cast<std::size_t>(std::count(labels().begin(), labels().end(), std::uint8_t{1}));
}

BinaryMask BinaryMask::inverted() const {
    BinaryMask out = *this;
    for (auto& v : out.grid_.pixels()) {
        v ^= 1;
    }
    return out;
}

bool BinaryMask::subset_of(const BinaryMask& other) const {
    if (!grid_.same_shape(other)) {
        throw DimensionError("mask shapes differ");
    }
    auto a = labels();
    auto b = other.labels();
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] && !b[i]) {
            return false;
        }
    }
    return true;
}

SaliencyImage normalize(const RawImage& raw) {
    if (raw.empty()) {
        throw DimensionError("cannot normalize an empty image");
    }
    auto px = raw.pixels();
    for (double v : px) {
        if (!std::isfinite(v)) {
            throw ParameterError("raw image contains a non-finite value");
        }
    }
    const auto [lo_it, hi_it] = std::minmax_element(px.begin(), px.end());
    const double lo = *lo_it;
    const double range = *hi_it - lo;

    std::vector<double> out(px.size(), 0.0);
    if (range > 0.0) {
        for (std::size_t i = 0; i < px.size(); ++i) {
            // clamp guards the last-ulp overshoot of (v - lo) / range
            out[i] = std::clamp((px[i] - lo) / range, 0.0, 1.0);
        }
    }
    return SaliencyImage(raw.width(), raw.height(), std::move(out));
}

}  // namespace vdpost
