#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vdpost/objects.hpp"

namespace vdpost {

/// Axis-aligned ground-truth vehicle, filled rectangle of pixels.
struct GroundTruthObject {
    int frame_index = 0;
    int min_row = 0;
    int min_col = 0;
    int height = 1;
    int width = 1;

    std::size_t area() const noexcept { return static_cast<std::size_t>(height) * static_cast<std::size_t>(width); }
    bool contains(const Pixel& p) const noexcept {
        return p.row >= min_row && p.row < min_row + height && p.col >= min_col && p.col < min_col + width;
    }
    /// Rasterized pixels in raster order.
    std::vector<Pixel> pixels() const;

    friend bool operator==(const GroundTruthObject&, const GroundTruthObject&) = default;
};

/// Jaccard overlap of every (GT i, detection j) pair; rows are GT objects.
class OverlapMatrix {
public:
    OverlapMatrix() = default;
    OverlapMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * cols_ + j]; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

/// Counts of the five detection classes. TN is always zero.
struct DetectionTally {
    long tp = 0;
    long s = 0;
    long m = 0;
    long fn = 0;
    long fp = 0;
    static constexpr long tn = 0;

    DetectionTally& operator+=(const DetectionTally& o) noexcept {
        tp += o.tp;
        s += o.s;
        m += o.m;
        fn += o.fn;
        fp += o.fp;
        return *this;
    }

    friend bool operator==(const DetectionTally&, const DetectionTally&) = default;
};

OverlapMatrix overlap_matrix(std::span<const GroundTruthObject> gt, const FrameDetections& det);

/// Greedy max-overlap matching followed by the TP/FN/Split/Merge/FP rules.
///
/// Positive entries are visited in descending overlap (ties: lower GT index,
/// then lower detection index); a pair is matched when neither side is
/// matched yet. The matching does not depend on lambda. A matched pair is a
/// TP when its overlap exceeds lambda; every other GT is an FN, so
/// tp + fn equals the GT count. Further touches of a GT by detections that
/// are neither its match nor another GT's TP are Splits. Every other GT
/// touched by a TP detection is a Merge. Detections touching no GT are FPs.
/// Throws ParameterError unless 0 <= lambda < 1.
DetectionTally classify_detections(const OverlapMatrix& ovlp, double lambda);

/// Percentage of wrong classifications, 100 (fp + fn) / (tp + fn + fp).
std::optional<double> pwc(const DetectionTally& t);

std::optional<double> precision(const DetectionTally& t);
std::optional<double> recall(const DetectionTally& t);

/// (1 + b2) tp / ((1 + b2) tp + b2 fn + fp), the count form of the weighted
/// harmonic mean of precision and recall. Absent only when tp = fp = fn = 0.
std::optional<double> f_beta(const DetectionTally& t, double beta2);
inline std::optional<double> f1(const DetectionTally& t) { return f_beta(t, 1.0); }

struct FrameStatistic {
    std::optional<double> mean;
    /// 1.96 s / sqrt(n) with the sample standard deviation; needs n >= 2.
    std::optional<double> ci95;
    std::size_t n = 0;
};

/// Mean and normal-approximation 95% half-width; absent values are skipped.
FrameStatistic frame_statistics(std::span<const std::optional<double>> per_frame);

/// Derived metrics of one tally.
struct MetricValues {
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;
    std::optional<double> f_beta;
    std::optional<double> pwc;
};

MetricValues metric_values(const DetectionTally& t, double beta2);

struct FrameResult {
    int frame_index = 0;
    DetectionTally tally;
    MetricValues values;
};

/// Per-frame rows plus the count-pooled aggregate and per-frame means.
struct MetricsReport {
    double beta2 = 0.3;
    std::vector<FrameResult> frames;
    DetectionTally pooled;
    MetricValues aggregate;

    struct Summary {
        FrameStatistic tp, s, m, fn, fp, precision, recall, f1, f_beta, pwc;
    } per_frame;
};

MetricsReport build_report(std::vector<FrameResult> frames, double beta2);

/// CSV: frame,tp,s,m,fn,fp,precision,recall,f1,f_beta,pwc then rows
/// "aggregate" (pooled counts), "mean" and "ci95" (per-frame statistics).
void write_report(std::ostream& out, const MetricsReport& report);

/// One "min_row,min_col,height,width" line per vehicle; blank lines ignored.
/// Throws IoError on unreadable or malformed files.
std::vector<GroundTruthObject> read_ground_truth(const std::filesystem::path& path, int frame_index);
void write_ground_truth(std::ostream& out, std::span<const GroundTruthObject> gt);

/// Throws DataError if any rectangle leaves a width x height frame.
void check_ground_truth(std::span<const GroundTruthObject> gt, int width, int height);

}  // namespace vdpost
