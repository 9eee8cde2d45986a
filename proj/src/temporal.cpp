#include "vdpost/temporal.hpp"

#include <algorithm>
#include <cmath>

namespace vdpost {

namespace {

std::size_t intersection_size(const std::vector<Pixel>& a, const std::vector<Pixel>& b) {
    std::size_t n = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++n;
            ++i;
            ++j;
        }
    }
    return n;
}

}  // namespace

void TemporalConfig::validate() const {
    if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) {
        throw ParameterError("temporal.iou_threshold must lie in (0, 1]");
    }
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw ParameterError("temporal.delta must be positive");
    }
}

double iou(const DetectedObject& a, const DetectedObject& b) {
    if (!a.bbox().intersects(b.bbox())) {
        return 0.0;
    }
    const auto inter = intersection_size(a.pixels(), b.pixels());
    const auto uni = a.area() + b.area() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

bool is_static(const DetectedObject& a, const FrameDetections& neighbor, const TemporalConfig& cfg) {
    return std::any_of(neighbor.objects.begin(), neighbor.objects.end(), [&](const DetectedObject& k) {
        if (!(iou(a, k) > cfg.iou_threshold)) {
            return false;
        }
        const double dr = a.centroid().row - k.centroid().row;
        const double dc = a.centroid().col - k.centroid().col;
        return std::hypot(dr, dc) < cfg.delta;
    });
}

std::vector<FrameDetections> filter_static(const std::vector<FrameDetections>& sequence, const TemporalConfig& cfg) {
    cfg.validate();
    if (sequence.empty()) {
        throw ParameterError("temporal filtering needs at least one frame");
    }
    if (sequence.size() == 1) {
        return sequence;
    }
    std::vector<FrameDetections> out;
    out.reserve(sequence.size());
    for (std::size_t t = 0; t < sequence.size(); ++t) {
        const auto& neighbor = t + 1 < sequence.size() ? sequence[t + 1] : sequence[t - 1];
        FrameDetections kept{sequence[t].frame_index, sequence[t].width, sequence[t].height, {}};
        for (const auto& obj : sequence[t].objects) {
            if (!is_static(obj, neighbor, cfg)) {
                kept.objects.push_back(obj);
            }
        }
        out.push_back(std::move(kept));
    }
    return out;
}

}  // namespace vdpost
