#include "vdpost/morphology.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace vdpost {

namespace {

// Horizontal run of footprint cells on one footprint row: offsets (dr, first..last).
struct Run {
    int dr;
    int first;
    int last;
};

std::vector<Run> runs_of(const StructuringElement& se) {
    std::vector<Run> runs;
    for (const auto& o : se.offsets()) {
        if (!runs.empty() && runs.back().dr == o.dr && runs.back().last + 1 == o.dc) {
            runs.back().last = o.dc;
        } else {
            runs.push_back({o.dr, o.dc, o.dc});
        }
    }
    return runs;
}

// prefix[r * (w + 1) + k] = foreground count in row r, columns [0, k).
std::vector<int> row_prefix_sums(const BinaryMask& mask) {
    const int w = mask.width();
    std::vector<int> prefix(static_cast<std::size_t>(mask.height()) * (w + 1), 0);
    for (int r = 0; r < mask.height(); ++r) {
        int* p = prefix.data() + static_cast<std::size_t>(r) * (w + 1);
        for (int c = 0; c < w; ++c) {
            p[c + 1] = p[c] + (mask(r, c) ? 1 : 0);
        }
    }
    return prefix;
}

BinaryMask pad(const BinaryMask& mask, int margin) {
    BinaryMask out(mask.width() + 2 * margin, mask.height() + 2 * margin);
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            out.set(r + margin, c + margin, mask(r, c));
        }
    }
    return out;
}

BinaryMask crop(const BinaryMask& mask, int margin, int width, int height) {
    BinaryMask out(width, height);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            out.set(r, c, mask(r + margin, c + margin));
        }
    }
    return out;
}

}  // namespace

StructuringElement StructuringElement::square(int n) {
    if (n < 1) {
        throw ParameterError("square structuring element needs size >= 1, got " + std::to_string(n));
    }
    std::vector<Offset> offsets;
    for (int dr = 0; dr < n; ++dr) {
        for (int dc = 0; dc < n; ++dc) {
            offsets.push_back({dr, dc});
        }
    }
    return StructuringElement(Shape::Square, n, std::move(offsets));
}

StructuringElement StructuringElement::disk(int radius) {
    if (radius < 1) {
        throw ParameterError("disk structuring element needs radius >= 1, got " + std::to_string(radius));
    }
    std::vector<Offset> offsets;
    for (int dr = -radius; dr <= radius; ++dr) {
        for (int dc = -radius; dc <= radius; ++dc) {
            if (dr * dr + dc * dc <= radius * radius) {
                offsets.push_back({dr, dc});
            }
        }
    }
    return StructuringElement(Shape::Disk, radius, std::move(offsets));
}

int StructuringElement::extent() const noexcept {
    int e = 0;
    for (const auto& o : offsets_) {
        e = std::max({e, std::abs(o.dr), std::abs(o.dc)});
    }
    return e;
}

BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se) {
    const int w = mask.width();
    const int h = mask.height();
    const auto prefix = row_prefix_sums(mask);
    const auto runs = runs_of(se);
    BinaryMask out(w, h);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            bool hit = false;
            for (const auto& run : runs) {
                const int sr = r - run.dr;
                if (sr < 0 || sr >= h) {
                    continue;
                }
                const int lo = std::max(c - run.last, 0);
                const int hi = std::min(c - run.first, w - 1);
                if (lo > hi) {
                    continue;
                }
                const int* p = prefix.data() + static_cast<std::size_t>(sr) * (w + 1);
                if (p[hi + 1] - p[lo] > 0) {
                    hit = true;
                    break;
                }
            }
            out.set(r, c, hit);
        }
    }
    return out;
}

BinaryMask erode(const BinaryMask& mask, const StructuringElement& se) {
    const int w = mask.width();
    const int h = mask.height();
    const auto prefix = row_prefix_sums(mask);
    const auto runs = runs_of(se);
    BinaryMask out(w, h);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            bool all = true;
            for (const auto& run : runs) {
                const int sr = r + run.dr;
                const int lo = c + run.first;
                const int hi = c + run.last;
                if (sr < 0 || sr >= h || lo < 0 || hi >= w) {
                    all = false;
                    break;
                }
                const int* p = prefix.data() + static_cast<std::size_t>(sr) * (w + 1);
                if (p[hi + 1] - p[lo] != hi - lo + 1) {
                    all = false;
                    break;
                }
            }
            out.set(r, c, all);
        }
    }
    return out;
}

BinaryMask open(const BinaryMask& mask, const StructuringElement& se) { return dilate(erode(mask, se), se); }

BinaryMask close(const BinaryMask& mask, const StructuringElement& se) {
    const int margin = se.extent();
    const BinaryMask padded = pad(mask, margin);
    return crop(erode(dilate(padded, se), se), margin, mask.width(), mask.height());
}

}  // namespace vdpost
