#pragma once

#include <vector>

#include "vdpost/image.hpp"

namespace vdpost {

struct Offset {
    int dr = 0;
    int dc = 0;

    friend auto operator<=>(const Offset&, const Offset&) = default;
};

/// Flat binary footprint, offsets relative to the origin pixel.
///
/// square(n) is anchored at its top-left cell: offsets 0 <= dr, dc < n.
/// disk(r) is centered: offsets with dr^2 + dc^2 <= r^2, so a "3x3" disk is
/// radius 1 and a "15x15" disk is radius 7.
class StructuringElement {
public:
    enum class Shape { Square, Disk };

    static StructuringElement square(int n);
    static StructuringElement disk(int radius);

    Shape shape() const noexcept { return shape_; }
    /// n for square(n), radius for disk(radius).
    int size() const noexcept { return size_; }
    /// Sorted raster order.
    const std::vector<Offset>& offsets() const noexcept { return offsets_; }

    /// Largest |dr| or |dc| over the footprint.
    int extent() const noexcept;

private:
    StructuringElement(Shape shape, int size, std::vector<Offset> offsets)
        : shape_(shape), size_(size), offsets_(std::move(offsets)) {}

    Shape shape_;
    int size_;
    std::vector<Offset> offsets_;
};

/// Throws ParameterError if radius < 1.
inline StructuringElement make_disk(int radius) { return StructuringElement::disk(radius); }

/// out(p) is foreground iff mask(p - b) is foreground for some b in se, i.e. the
/// union of copies of the mask translated by each offset. Targets outside
/// the image are dropped.
BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se);

/// out(p) is foreground iff p + b is inside the image and foreground for
/// every b in se. Pixels outside the image count as background, so regions
/// touching the border erode.
BinaryMask erode(const BinaryMask& mask, const StructuringElement& se);

/// dilate(erode(mask)).
BinaryMask open(const BinaryMask& mask, const StructuringElement& se);

/// erode(dilate(mask)) evaluated as if the mask were embedded in an unbounded
/// background plane, then cropped back to the image. Dilated pixels that spill
/// past the border are kept for the erosion, which keeps closing extensive at
/// the border.
BinaryMask close(const BinaryMask& mask, const StructuringElement& se);

}  // namespace vdpost
