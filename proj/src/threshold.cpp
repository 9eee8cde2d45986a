#include "vdpost/threshold.hpp"

#include <array>
#include <string>

namespace vdpost {

namespace {

struct Offset {
    int dr;
    int dc;
};

// Offsets are listed in raster order, center included, so sums accumulate
// top-to-bottom, left-to-right.
constexpr std::array<Offset, 9> kFull8{{{-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 0}, {0, 1}, {1, -1}, {1, 0}, {1, 1}}};
constexpr std::array<Offset, 5> kPlus4{{{-1, 0}, {0, -1}, {0, 0}, {0, 1}, {1, 0}}};
constexpr std::array<Offset, 5> kDiag4{{{-1, -1}, {-1, 1}, {0, 0}, {1, -1}, {1, 1}}};

template <std::size_t N>
double mean_over(const SaliencyImage& img, int r, int c, const std::array<Offset, N>& offsets) {
    double sum = 0.0;
    int count = 0;
    for (const auto& o : offsets) {
        const int rr = r + o.dr;
        const int cc = c + o.dc;
        if (img.contains(rr, cc)) {
            sum += img(rr, cc);
            ++count;
        }
    }
    return sum / count;
}

void check_unit(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ParameterError(std::string("threshold.") + name + " must lie in [0, 1]");
    }
}

}  // namespace

void HysteresisConfig::validate() const {
    check_unit(hi, "hi");
    check_unit(lo, "lo");
    check_unit(nbhd_hi, "nbhd_hi");
    check_unit(nbhd_lo, "nbhd_lo");
    check_unit(sub_mean, "sub_mean");
    if (!(lo < hi)) {
        throw ParameterError("threshold.lo must be below threshold.hi");
    }
    if (!(nbhd_lo < nbhd_hi)) {
        throw ParameterError("threshold.nbhd_lo must be below threshold.nbhd_hi");
    }
}

double neighborhood_mean(const SaliencyImage& img, int r, int c, Neighborhood kind) {
    if (!img.contains(r, c)) {
        throw BoundsError("pixel (" + std::to_string(r) + ", " + std::to_string(c) + ") outside image");
    }
    switch (kind) {
        case Neighborhood::Full8:
            return mean_over(img, r, c, kFull8);
        case Neighborhood::Plus4:
            return mean_over(img, r, c, kPlus4);
        case Neighborhood::Diag4:
            return mean_over(img, r, c, kDiag4);
    }
    return 0.0;
}

BinaryMask hysteresis_threshold(const SaliencyImage& img, const HysteresisConfig& cfg) {
    cfg.validate();
    BinaryMask out(img.width(), img.height());
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            const double v = img(r, c);
            bool fg = false;
            if (v > cfg.hi) {
                fg = true;
            } else if (v < cfg.lo) {
                fg = false;
            } else {
                const double m8 = mean_over(img, r, c, kFull8);
                if (m8 > cfg.nbhd_hi) {
                    fg = true;
                } else if (m8 < cfg.nbhd_lo) {
                    fg = false;
                } else {
                    fg = mean_over(img, r, c, kPlus4) > cfg.sub_mean || mean_over(img, r, c, kDiag4) > cfg.sub_mean;
                }
            }
            out.set(r, c, fg);
        }
    }
    return out;
}

BinaryMask fixed_threshold(const SaliencyImage& img, double t) {
    BinaryMask out(img.width(), img.height());
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            out.set(r, c, img(r, c) > t);
        }
    }
    return out;
}

}  // namespace vdpost
