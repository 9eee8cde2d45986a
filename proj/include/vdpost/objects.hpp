#pragma once

#include <iosfwd>
#include <vector>

#include "vdpost/image.hpp"

namespace vdpost {

struct Centroid {
    double row = 0.0;
    double col = 0.0;

    friend bool operator==(const Centroid&, const Centroid&) = default;
};

struct BoundingBox {
    int min_row = 0;
    int min_col = 0;
    int max_row = 0;
    int max_col = 0;

    bool intersects(const BoundingBox& o) const noexcept {
        return min_row <= o.max_row && o.min_row <= max_row && min_col <= o.max_col && o.min_col <= max_col;
    }

    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// One 8-connected foreground region.
class DetectedObject {
public:
    DetectedObject() = default;
    /// Pixels need not be sorted; duplicates are rejected. Connectivity is
    /// the caller's responsibility.
    DetectedObject(int id, std::vector<Pixel> pixels);

    int id() const noexcept { return id_; }
    /// Sorted in raster order.
    const std::vector<Pixel>& pixels() const noexcept { return pixels_; }
    std::size_t area() const noexcept { return pixels_.size(); }
    Centroid centroid() const noexcept { return centroid_; }
    const BoundingBox& bbox() const noexcept { return bbox_; }

    friend bool operator==(const DetectedObject&, const DetectedObject&) = default;

private:
    int id_ = 0;
    std::vector<Pixel> pixels_;
    Centroid centroid_;
    BoundingBox bbox_;
};

struct FrameDetections {
    int frame_index = 0;
    int width = 0;
    int height = 0;
    /// Ids are 1..n in raster order of each object's first pixel.
    std::vector<DetectedObject> objects;

    friend bool operator==(const FrameDetections&, const FrameDetections&) = default;
};

/// Arithmetic mean of pixel coordinates.
Centroid centroid(std::span<const Pixel> pixels);
inline Centroid centroid(const DetectedObject& obj) { return obj.centroid(); }

/// Two-pass union-find labeling with 8-connectivity.
FrameDetections label_components(const BinaryMask& mask, int frame_index = 0);

/// Mask holding exactly the pixels of the given objects.
BinaryMask render_mask(const FrameDetections& detections);

/// One line per object:
/// frame_index,id,area,centroid_row,centroid_col,min_row,min_col,max_row,max_col
void write_detections(std::ostream& out, const FrameDetections& detections);
void write_detections_header(std::ostream& out);

}  // namespace vdpost
