#pragma once

#include <vector>

#include "vdpost/objects.hpp"

namespace vdpost {

struct TemporalConfig {
    double iou_threshold = 0.75;
    /// Centroid displacement in pixels; 2 for low-resolution footage, 5 for high.
    double delta = 2.0;

    void validate() const;
};

/// |a ∩ b| / |a ∪ b| over pixel sets on the same registered grid.
double iou(const DetectedObject& a, const DetectedObject& b);

/// Removes objects that stay put between adjacent frames.
///
/// Object j of frame t is dropped iff some object k of frame t+1 has
/// iou(j, k) > iou_threshold and a centroid distance < delta. The last frame
/// is compared against its predecessor instead. Every decision is taken
/// against the unfiltered neighbor, so the result does not depend on frame
/// processing order. A single frame passes through untouched.
std::vector<FrameDetections> filter_static(const std::vector<FrameDetections>& sequence, const TemporalConfig& cfg);

/// True iff a has a static partner in neighbor under cfg.
bool is_static(const DetectedObject& a, const FrameDetections& neighbor, const TemporalConfig& cfg);

}  // namespace vdpost
