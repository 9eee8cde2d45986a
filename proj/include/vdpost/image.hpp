#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vdpost/error.hpp"

namespace vdpost {

struct Pixel {
    int row = 0;
    int col = 0;

    friend auto operator<=>(const Pixel&, const Pixel&) = default;
};

/// Dense row-major 2-D array. Width and height are both at least one.
template <typename T>
class Grid {
public:
    Grid() = default;

    Grid(int width, int height, T fill = T{}) : width_(width), height_(height) {
        check_dims(width, height);
        data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    }

    Grid(int width, int height, std::vector<T> data)
        : width_(width), height_(height), data_(std::move(data)) {
        check_dims(width, height);
        if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
            throw DimensionError("pixel buffer length does not match width x height");
        }
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    bool contains(int r, int c) const noexcept {
        return r >= 0 && c >= 0 && r < height_ && c < width_;
    }

    const T& operator()(int r, int c) const noexcept { return data_[index(r, c)]; }
    T& operator()(int r, int c) noexcept { return data_[index(r, c)]; }

    std::span<const T> pixels() const noexcept { return data_; }
    std::span<T> pixels() noexcept { return data_; }
    std::span<const T> row(int r) const noexcept {
        return std::span<const T>(data_).subspan(index(r, 0), static_cast<std::size_t>(width_));
    }

    bool same_shape(const auto& other) const noexcept {
        return width_ == other.width() && height_ == other.height();
    }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    static void check_dims(int width, int height) {
        if (width < 1 || height < 1) {
            throw DimensionError("image dimensions must be at least 1x1");
        }
    }

    std::size_t index(int r, int c) const noexcept {
        return static_cast<std::size_t>(r) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(c);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

/// Grayscale image with an arbitrary real range, prior to normalization.
using RawImage = Grid<double>;

/// Normalized saliency map; every value lies in [0, 1].
class SaliencyImage {
public:
    SaliencyImage() = default;
    /// Throws ParameterError if any value is outside [0, 1] or NaN.
    explicit SaliencyImage(Grid<double> values);
    SaliencyImage(int width, int height, std::vector<double> values)
        : SaliencyImage(Grid<double>(width, height, std::move(values))) {}

    int width() const noexcept { return grid_.width(); }
    int height() const noexcept { return grid_.height(); }
    bool contains(int r, int c) const noexcept { return grid_.contains(r, c); }
    double operator()(int r, int c) const noexcept { return grid_(r, c); }
    std::span<const double> pixels() const noexcept { return grid_.pixels(); }
    const Grid<double>& grid() const noexcept { return grid_; }

    friend bool operator==(const SaliencyImage&, const SaliencyImage&) = default;

private:
    Grid<double> grid_;
};

/// Per-pixel foreground (1) / background (0) labels.
class BinaryMask {
public:
    BinaryMask() = default;
    BinaryMask(int width, int height) : grid_(width, height, 0) {}
    /// Any nonzero byte is foreground; stored values are normalized to {0, 1}.
    BinaryMask(int width, int height, std::vector<std::uint8_t> labels);

    int width() const noexcept { return grid_.width(); }
    int height() const noexcept { return grid_.height(); }
    std::size_t size() const noexcept { return grid_.size(); }
    bool contains(int r, int c) const noexcept { return grid_.contains(r, c); }

    bool operator()(int r, int c) const noexcept { return grid_(r, c) != 0; }
    void set(int r, int c, bool fg) noexcept { grid_(r, c) = fg ? 1 : 0; }

    std::span<const std::uint8_t> labels() const noexcept { return grid_.pixels(); }
    std::size_t count() const noexcept;

    /// Pixelwise complement.
    BinaryMask inverted() const;
    /// True if every foreground pixel of *this is foreground in other.
    bool subset_of(const BinaryMask& other) const;

    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
    Grid<std::uint8_t> grid_;
};

/// Linear min-max rescale to [0, 1]. A constant image maps to all zeros.
SaliencyImage normalize(const RawImage& raw);

}  // namespace vdpost
