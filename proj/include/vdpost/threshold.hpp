#pragma once

#include "vdpost/image.hpp"

namespace vdpost {

/// Thresholds of the multi-neighborhood hysteresis scheme. Defaults suit
/// bright vehicles on a darker road surface.
struct HysteresisConfig {
    double hi = 5.0 / 8.0;        // above: foreground outright
    double lo = 1.0 / 8.0;        // below: background outright
    double nbhd_hi = 3.0 / 5.0;   // 3x3 mean above: foreground
    double nbhd_lo = 1.0 / 6.0;   // 3x3 mean below: background
    double sub_mean = 0.5;        // plus or diagonal mean above: foreground

    /// Throws ParameterError unless 0 <= lo < hi <= 1, 0 <= nbhd_lo < nbhd_hi <= 1
    /// and 0 <= sub_mean <= 1.
    void validate() const;
};

enum class Neighborhood {
    Full8,  // center plus all 8 neighbors
    Plus4,  // center plus N, S, E, W
    Diag4,  // center plus the 4 diagonal neighbors
};

/// Mean of the center pixel and the in-bounds neighbors of the given kind.
/// Out-of-bounds neighbors are dropped from both sum and count.
double neighborhood_mean(const SaliencyImage& img, int r, int c, Neighborhood kind);

/// Labels every pixel from the original image values only; no propagation.
BinaryMask hysteresis_threshold(const SaliencyImage& img, const HysteresisConfig& cfg = {});

/// Single global threshold: foreground iff v > t.
BinaryMask fixed_threshold(const SaliencyImage& img, double t);

}  // namespace vdpost
