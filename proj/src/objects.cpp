#include "vdpost/objects.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "vdpost/format.hpp"

namespace vdpost {

namespace {

class DisjointSets {
public:
    int make() {
        parent_.push_back(static_cast<int>(parent_.size()));
        return parent_.back();
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void join(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            // smaller index wins so roots stay stable across runs
            if (b < a) {
                std::swap(a, b);
            }
            parent_[b] = a;
        }
    }

private:
    std::vector<int> parent_;
};

}  // namespace

DetectedObject::DetectedObject(int id, std::vector<Pixel> pixels) : id_(id), pixels_(std::move(pixels)) {
    if (pixels_.empty()) {
        throw ParameterError("detected object needs at least one pixel");
    }
    std::sort(pixels_.begin(), pixels_.end());
    if (std::adjacent_find(pixels_.begin(), pixels_.end()) != pixels_.end()) {
        throw ParameterError("detected object has duplicate pixels");
    }
    centroid_ = vdpost::centroid(pixels_);
    bbox_ = {pixels_.front().row, pixels_.front().col, pixels_.back().row, pixels_.front().col};
    for (const auto& p : pixels_) {
        bbox_.min_col = std::min(bbox_.min_col, p.col);
        bbox_.max_col = std::max(bbox_.max_col, p.col);
    }
}

Centroid centroid(std::span<const Pixel> pixels) {
    if (pixels.empty()) {
        throw ParameterError("centroid of an empty pixel set");
    }
    double sr = 0.0;
    double sc = 0.0;
    for (const auto& p : pixels) {
        sr += p.row;
        sc += p.col;
    }
    const auto n = static_cast<double>(pixels.size());
    return {sr / n, sc / n};
}

FrameDetections label_components(const BinaryMask& mask, int frame_index) {
    const int w = mask.width();
    const int h = mask.height();
    std::vector<int> provisional(mask.size(), -1);
    DisjointSets sets;
    auto at = [&](int r, int c) -> int& { return provisional[static_cast<std::size_t>(r) * w + c]; };

    // first pass: W, NW, N, NE are already labeled
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (!mask(r, c)) {
                continue;
            }
            int label = -1;
            auto take = [&](int rr, int cc) {
                if (rr < 0 || cc < 0 || cc >= w || !mask(rr, cc)) {
                    return;
                }
                const int other = at(rr, cc);
                if (label < 0) {
                    label = other;
                } else {
                    sets.join(label, other);
                }
            };
            take(r, c - 1);
            take(r - 1, c - 1);
            take(r - 1, c);
            take(r - 1, c + 1);
            at(r, c) = label < 0 ? sets.make() : label;
        }
    }

    // second pass: dense ids in raster order of first pixel
    std::vector<int> dense;
    std::vector<std::vector<Pixel>> members;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const int p = at(r, c);
            if (p < 0) {
                continue;
            }
            const int root = sets.find(p);
            if (static_cast<std::size_t>(root) >= dense.size()) {
                dense.resize(root + 1, -1);
            }
            if (dense[root] < 0) {
                dense[root] = static_cast<int>(members.size());
                members.emplace_back();
            }
            members[dense[root]].push_back({r, c});
        }
    }

    FrameDetections out{frame_index, w, h, {}};
    out.objects.reserve(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
        out.objects.emplace_back(static_cast<int>(i) + 1, std::move(members[i]));
    }
    return out;
}

BinaryMask render_mask(const FrameDetections& detections) {
    BinaryMask mask(detections.width, detections.height);
    for (const auto& obj : detections.objects) {
        for (const auto& p : obj.pixels()) {
            if (!mask.contains(p.row, p.col)) {
                throw BoundsError("object pixel outside the frame");
            }
            mask.set(p.row, p.col, true);
        }
    }
    return mask;
}

void write_detections_header(std::ostream& out) {
    out << "frame_index,id,area,centroid_row,centroid_col,min_row,min_col,max_row,max_col\n";
}

void write_detections(std::ostream& out, const FrameDetections& detections) {
    for (const auto& obj : detections.objects) {
        const auto& b = obj.bbox();
        out << detections.frame_index << ',' << obj.id() << ',' << obj.area() << ',' << format_real(obj.centroid().row)
            << ',' << format_real(obj.centroid().col) << ',' << b.min_row << ',' << b.min_col << ',' << b.max_row
            << ',' << b.max_col << '\n';
    }
}

}  // namespace vdpost
