#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "vdpost/image.hpp"
#include "vdpost/metrics.hpp"
#include "vdpost/morphology.hpp"
#include "vdpost/objects.hpp"
#include "vdpost/temporal.hpp"
#include "vdpost/threshold.hpp"

namespace vdpost {

enum class Profile { LowRes, HighRes, Custom };

using KeyValues = std::map<std::string, std::string>;

struct PipelineConfig {
    Profile profile = Profile::LowRes;
    HysteresisConfig threshold;
    int open_size = 2;
    int close_radius = 1;
    TemporalConfig temporal;
    double lambda = 0.1;
    double beta2 = 0.3;
    std::filesystem::path input_dir;
    std::filesystem::path gt_dir;
    std::filesystem::path output_dir;
    /// Worker threads for per-frame stages; results do not depend on it.
    int parallelism = 1;

    /// Defaults for a profile. Custom starts from the low-resolution values
    /// but make_config insists every tunable key is given explicitly.
    static PipelineConfig for_profile(Profile p);

    void validate() const;
};

/// Every key make_config understands.
const std::vector<std::string>& config_keys();

/// Flat key=value lines; '#' comments and blank lines ignored.
KeyValues parse_key_values(std::istream& in);
KeyValues read_key_values(const std::filesystem::path& path);

/// Precedence: overrides > file > profile default. Throws ParameterError
/// for unknown keys, unparsable values, and custom profiles with missing keys.
PipelineConfig make_config(const KeyValues& file, const KeyValues& overrides = {});

/// Stand-in for a saliency enhancer: returns its input.
SaliencyImage enhance(const SaliencyImage& img);

struct SpatialResult {
    BinaryMask thresholded;
    /// After opening with square(open_size) then closing with disk(close_radius).
    BinaryMask shaped;
};

SpatialResult spatial_process(const SaliencyImage& img, const PipelineConfig& cfg);

BinaryMask shape_mask(const BinaryMask& mask, const PipelineConfig& cfg);

struct SequenceResult {
    std::vector<SpatialResult> spatial;
    /// Components of the shaped masks.
    std::vector<FrameDetections> spatial_detections;
    /// After static-object removal.
    std::vector<FrameDetections> temporal_detections;
};

/// Throws DataError if the frames differ in size.
SequenceResult process_sequence(const std::vector<SaliencyImage>& frames, const PipelineConfig& cfg);

/// Per-frame classification against ground truth.
MetricsReport evaluate(const std::vector<FrameDetections>& detections,
                       const std::vector<std::vector<GroundTruthObject>>& gt, double lambda, double beta2);

struct LambdaRow {
    double lambda = 0.0;
    DetectionTally tally;
    MetricValues values;
};

/// Overlap matrices are built once and re-thresholded for every lambda.
/// Metrics are count-pooled over frames. Throws ParameterError on an empty list.
std::vector<LambdaRow> sweep_lambda(const std::vector<FrameDetections>& detections,
                                    const std::vector<std::vector<GroundTruthObject>>& gt,
                                    const std::vector<double>& lambdas, double beta2);

struct DiskRow {
    int radius = 0;
    DetectionTally tally;
    std::optional<double> f1;
};

/// Re-runs the full pipeline for every closing radius, rows in input order.
std::vector<DiskRow> sweep_disk(const std::vector<SaliencyImage>& frames,
                                const std::vector<std::vector<GroundTruthObject>>& gt, const PipelineConfig& cfg,
                                const std::vector<int>& radii);

void write_lambda_sweep(std::ostream& out, const std::vector<LambdaRow>& rows);
void write_disk_sweep(std::ostream& out, const std::vector<DiskRow>& rows);
void write_detection_file(const std::filesystem::path& path, const std::vector<FrameDetections>& seq);

// File-level helpers shared by the CLI subcommands.

struct FrameSet {
    std::vector<std::filesystem::path> files;
    std::vector<SaliencyImage> frames;
};

/// Frames (.pgm/.png) of dir in filename order, normalized. Throws DataError on size mismatch.
FrameSet load_frames(const std::filesystem::path& dir, int parallelism = 1);

struct MaskSet {
    std::vector<std::filesystem::path> files;
    std::vector<BinaryMask> masks;
};

MaskSet load_masks(const std::filesystem::path& dir);

/// gt_dir/<stem>.txt for each frame file; checked against the frame size.
std::vector<std::vector<GroundTruthObject>> load_ground_truth(const std::filesystem::path& gt_dir,
                                                              const std::vector<std::filesystem::path>& files,
                                                              int width, int height);

/// Writes masks as out_dir/<stem>.pgm, creating out_dir.
void save_masks(const std::filesystem::path& out_dir, const std::vector<std::filesystem::path>& names,
                const std::vector<BinaryMask>& masks);

struct RunSummary {
    std::size_t frames = 0;
    bool evaluated = false;
    MetricsReport spatial_report;
    MetricsReport temporal_report;
};

/// End-to-end run: reads cfg.input_dir, writes under cfg.output_dir
///   threshold/, morph/, temporal/          masks per frame
///   detections_spatial.csv                 after spatial processing
///   detections_temporal.csv                after static-object removal
///   metrics_spatial.csv, metrics.csv       when cfg.gt_dir is set
RunSummary run(const PipelineConfig& cfg);

/// Calls fn(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace vdpost
