#include "oracles.hpp"

#include <deque>

namespace vdpost::oracle {

BinaryMask literal_threshold(const SaliencyImage& img, double hi, double lo, double nbhd_hi, double nbhd_lo,
                             double sub_mean) {
    BinaryMask L(img.width(), img.height());
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            const double S = img(r, c);

            // strong
            if (S > hi) {
                L.set(r, c, true);
                continue;
            }
            // weak
            if (S < lo) {
                L.set(r, c, false);
                continue;
            }
            // middle band: S in [lo, hi]. Neighbors outside the frame do not exist.
            double sum9 = 0.0;
            int n9 = 0;
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    if (img.contains(r + dr, c + dc)) {
                        sum9 += img(r + dr, c + dc);
                        n9 += 1;
                    }
                }
            }
            const double mean9 = sum9 / n9;
            if (mean9 > nbhd_hi) {
                L.set(r, c, true);
            } else if (mean9 < nbhd_lo) {
                L.set(r, c, false);
            } else {  // mean9 in [nbhd_lo, nbhd_hi]: plus and diagonal sub-means
                double sum_plus = 0.0;
                int n_plus = 0;
                double sum_diag = 0.0;
                int n_diag = 0;
                for (int dr = -1; dr <= 1; ++dr) {
                    for (int dc = -1; dc <= 1; ++dc) {
                        if (!img.contains(r + dr, c + dc)) {
                            continue;
                        }
                        const bool center = dr == 0 && dc == 0;
                        const bool edge = (dr == 0) != (dc == 0);
                        const bool corner = dr != 0 && dc != 0;
                        if (center || edge) {
                            sum_plus += img(r + dr, c + dc);
                            n_plus += 1;
                        }
                        if (center || corner) {
                            sum_diag += img(r + dr, c + dc);
                            n_diag += 1;
                        }
                    }
                }
                const double mean_plus = sum_plus / n_plus;
                const double mean_diag = sum_diag / n_diag;
                L.set(r, c, mean_plus > sub_mean || mean_diag > sub_mean);
            }
        }
    }
    return L;
}

BinaryMask union_of_translates(const BinaryMask& mask, const std::vector<Offset>& offsets) {
    BinaryMask out(mask.width(), mask.height());
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            if (!mask(r, c)) {
                continue;
            }
            for (const auto& b : offsets) {
                if (out.contains(r + b.dr, c + b.dc)) {
                    out.set(r + b.dr, c + b.dc, true);
                }
            }
        }
    }
    return out;
}

BinaryMask fits_everywhere(const BinaryMask& mask, const std::vector<Offset>& offsets) {
    BinaryMask out(mask.width(), mask.height());
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            bool fits = true;
            for (const auto& b : offsets) {
                fits = fits && mask.contains(r + b.dr, c + b.dc) && mask(r + b.dr, c + b.dc);
            }
            out.set(r, c, fits);
        }
    }
    return out;
}

std::set<std::set<Pixel>> flood_fill_partition(const BinaryMask& mask) {
    std::set<std::set<Pixel>> parts;
    std::vector<char> seen(mask.size(), 0);
    auto idx = [&](int r, int c) { return static_cast<std::size_t>(r) * mask.width() + c; };
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            if (!mask(r, c) || seen[idx(r, c)]) {
                continue;
            }
            std::set<Pixel> part;
            std::deque<Pixel> queue{{r, c}};
            seen[idx(r, c)] = 1;
            while (!queue.empty()) {
                const Pixel p = queue.front();
                queue.pop_front();
                part.insert(p);
                for (int dr = -1; dr <= 1; ++dr) {
                    for (int dc = -1; dc <= 1; ++dc) {
                        const int rr = p.row + dr;
                        const int cc = p.col + dc;
                        if (mask.contains(rr, cc) && mask(rr, cc) && !seen[idx(rr, cc)]) {
                            seen[idx(rr, cc)] = 1;
                            queue.push_back({rr, cc});
                        }
                    }
                }
            }
            parts.insert(std::move(part));
        }
    }
    return parts;
}

}  // namespace vdpost::oracle
