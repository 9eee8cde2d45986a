#include "vdpost/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <thread>

#include "vdpost/format.hpp"
#include "vdpost/io.hpp"

namespace vdpost {
namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kTunableKeys = {
    "threshold.hi",      "threshold.lo",       "threshold.nbhd_hi",      "threshold.nbhd_lo",
    "threshold.sub_mean", "morph.open_size",   "morph.close_radius",     "temporal.iou_threshold",
    "temporal.delta",    "eval.lambda",        "eval.beta2",
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_real(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double d = 0.0;
    try {
        d = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != value.size() || !std::isfinite(d)) {
        throw ParameterError("config key '" + key + "': expected a number, got '" + value + "'");
    }
    return d;
}

int to_int(const std::string& key, const std::string& value) {
    const double d = to_real(key, value);
    if (d != std::floor(d) || std::abs(d) > 1e9) {
        throw ParameterError("config key '" + key + "': expected an integer, got '" + value + "'");
    }
    return static_cast<int>(d);
}

Profile to_profile(const std::string& value) {
    if (value == "low_res") {
        return Profile::LowRes;
    }
    if (value == "high_res") {
        return Profile::HighRes;
    }
    if (value == "custom") {
        return Profile::Custom;
    }
    throw ParameterError("unknown profile '" + value + "' (low_res, high_res, custom)");
}

std::vector<FrameDetections> label_all(const std::vector<BinaryMask>& masks, int threads) {
    std::vector<FrameDetections> out(masks.size());
    parallel_for(masks.size(), threads,
                 [&](std::size_t t) { out[t] = label_components(masks[t], static_cast<int>(t)); });
    return out;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError(IoErrorKind::Unwritable, "cannot create directory " + dir.string());
    }
}

void write_report_file(const fs::path& path, const MetricsReport& report) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    write_report(out, report);
    if (!out) {
        throw IoError(IoErrorKind::Unwritable, "cannot write " + path.string());
    }
}

}  // namespace

PipelineConfig PipelineConfig::for_profile(Profile p) {
    PipelineConfig cfg;
    cfg.profile = p;
    if (p == Profile::HighRes) {
        cfg.close_radius = 7;
        cfg.temporal.delta = 5.0;
        cfg.lambda = 0.25;
    }
    return cfg;
}

void PipelineConfig::validate() const {
    threshold.validate();
    temporal.validate();
    if (open_size < 1) {
        throw ParameterError("morph.open_size must be >= 1");
    }
    if (close_radius < 1) {
        throw ParameterError("morph.close_radius must be >= 1");
    }
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw ParameterError("eval.lambda must lie in [0, 1)");
    }
    if (!(beta2 >= 0.0)) {
        throw ParameterError("eval.beta2 must be non-negative");
    }
    if (parallelism < 1) {
        throw ParameterError("parallelism must be >= 1");
    }
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k = {"profile"};
        k.insert(k.end(), kTunableKeys.begin(), kTunableKeys.end());
        k.insert(k.end(), {"input_dir", "gt_dir", "output_dir", "parallelism"});
        return k;
    }();
    return keys;
}

KeyValues parse_key_values(std::istream& in) {
    KeyValues kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || trim(line.substr(0, eq)).empty()) {
            throw ParameterError("config line " + std::to_string(line_no) + ": expected key=value");
        }
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

KeyValues read_key_values(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(IoErrorKind::Unreadable, "cannot open config " + path.string());
    }
    return parse_key_values(in);
}

PipelineConfig make_config(const KeyValues& file, const KeyValues& overrides) {
    KeyValues merged = file;
    for (const auto& [k, v] : overrides) {
        merged[k] = v;
    }
    const auto& known = config_keys();
    for (const auto& [k, v] : merged) {
        if (std::find(known.begin(), known.end(), k) == known.end()) {
            throw ParameterError("unknown config key '" + k + "'");
        }
    }

    const Profile profile = merged.contains("profile") ? to_profile(merged.at("profile")) : Profile::LowRes;
    if (profile == Profile::Custom) {
        for (const auto& k : kTunableKeys) {
            if (!merged.contains(k)) {
                throw ParameterError("custom profile requires key '" + k + "'");
            }
        }
    }

    PipelineConfig cfg = PipelineConfig::for_profile(profile);
    auto real = [&](const char* key, double& field) {
        if (auto it = merged.find(key); it != merged.end()) {
            field = to_real(key, it->second);
        }
    };
    auto integer = [&](const char* key, int& field) {
        if (auto it = merged.find(key); it != merged.end()) {
            field = to_int(key, it->second);
        }
    };
    auto path = [&](const char* key, fs::path& field) {
        if (auto it = merged.find(key); it != merged.end()) {
            field = it->second;
        }
    };
    real("threshold.hi", cfg.threshold.hi);
    real("threshold.lo", cfg.threshold.lo);
    real("threshold.nbhd_hi", cfg.threshold.nbhd_hi);
    real("threshold.nbhd_lo", cfg.threshold.nbhd_lo);
    real("threshold.sub_mean", cfg.threshold.sub_mean);
    integer("morph.open_size", cfg.open_size);
    integer("morph.close_radius", cfg.close_radius);
    real("temporal.iou_threshold", cfg.temporal.iou_threshold);
    real("temporal.delta", cfg.temporal.delta);
    real("eval.lambda", cfg.lambda);
    real("eval.beta2", cfg.beta2);
    path("input_dir", cfg.input_dir);
    path("gt_dir", cfg.gt_dir);
    path("output_dir", cfg.output_dir);
    integer("parallelism", cfg.parallelism);
    cfg.validate();
    return cfg;
}

SaliencyImage enhance(const SaliencyImage& img) { return img; }

BinaryMask shape_mask(const BinaryMask& mask, const PipelineConfig& cfg) {
    const auto opened = open(mask, StructuringElement::square(cfg.open_size));
    return close(opened, StructuringElement::disk(cfg.close_radius));
}

SpatialResult spatial_process(const SaliencyImage& img, const PipelineConfig& cfg) {
    SpatialResult out;
    out.thresholded = hysteresis_threshold(enhance(img), cfg.threshold);
    out.shaped = shape_mask(out.thresholded, cfg);
    return out;
}

SequenceResult process_sequence(const std::vector<SaliencyImage>& frames, const PipelineConfig& cfg) {
    cfg.validate();
    if (frames.empty()) {
        throw ParameterError("empty frame sequence");
    }
    for (const auto& f : frames) {
        if (f.width() != frames.front().width() || f.height() != frames.front().height()) {
            throw DataError("frame sizes differ within the sequence");
        }
    }
    SequenceResult res;
    res.spatial.resize(frames.size());
    parallel_for(frames.size(), cfg.parallelism, [&](std::size_t t) { res.spatial[t] = spatial_process(frames[t], cfg); });

    std::vector<BinaryMask> shaped;
    shaped.reserve(frames.size());
    for (const auto& s : res.spatial) {
        shaped.push_back(s.shaped);
    }
    res.spatial_detections = label_all(shaped, cfg.parallelism);
    // barrier: temporal filtering needs every frame's detections
    res.temporal_detections = filter_static(res.spatial_detections, cfg.temporal);
    return res;
}

MetricsReport evaluate(const std::vector<FrameDetections>& detections,
                       const std::vector<std::vector<GroundTruthObject>>& gt, double lambda, double beta2) {
    if (detections.size() != gt.size()) {
        throw DataError("ground truth covers " + std::to_string(gt.size()) + " frames, detections " +
                        std::to_string(detections.size()));
    }
    std::vector<FrameResult> frames;
    frames.reserve(detections.size());
    for (std::size_t t = 0; t < detections.size(); ++t) {
        const auto ovlp = overlap_matrix(gt[t], detections[t]);
        frames.push_back({detections[t].frame_index, classify_detections(ovlp, lambda), {}});
    }
    return build_report(std::move(frames), beta2);
}

std::vector<LambdaRow> sweep_lambda(const std::vector<FrameDetections>& detections,
                                    const std::vector<std::vector<GroundTruthObject>>& gt,
                                    const std::vector<double>& lambdas, double beta2) {
    if (lambdas.empty()) {
        throw ParameterError("lambda sweep needs at least one value");
    }
    if (detections.size() != gt.size()) {
        throw DataError("ground truth and detections cover different frame counts");
    }
    std::vector<OverlapMatrix> matrices;
    matrices.reserve(detections.size());
    for (std::size_t t = 0; t < detections.size(); ++t) {
        matrices.push_back(overlap_matrix(gt[t], detections[t]));
    }
    std::vector<LambdaRow> rows;
    for (double lambda : lambdas) {
        LambdaRow row{lambda, {}, {}};
        for (const auto& m : matrices) {
            row.tally += classify_detections(m, lambda);
        }
        row.values = metric_values(row.tally, beta2);
        rows.push_back(row);
    }
    return rows;
}

std::vector<DiskRow> sweep_disk(const std::vector<SaliencyImage>& frames,
                                const std::vector<std::vector<GroundTruthObject>>& gt, const PipelineConfig& cfg,
                                const std::vector<int>& radii) {
    if (radii.empty()) {
        throw ParameterError("disk sweep needs at least one radius");
    }
    for (int r : radii) {
        if (r < 1) {
            throw ParameterError("disk radius must be >= 1, got " + std::to_string(r));
        }
    }
    std::vector<DiskRow> rows;
    for (int r : radii) {
        PipelineConfig c = cfg;
        c.close_radius = r;
        const auto res = process_sequence(frames, c);
        const auto report = evaluate(res.temporal_detections, gt, c.lambda, c.beta2);
        rows.push_back({r, report.pooled, report.aggregate.f1});
    }
    return rows;
}

void write_lambda_sweep(std::ostream& out, const std::vector<LambdaRow>& rows) {
    out << "lambda,tp,fn,precision,recall,f1,f_beta\n";
    for (const auto& r : rows) {
        out << format_real(r.lambda) << ',' << r.tally.tp << ',' << r.tally.fn << ','
            << format_real(r.values.precision) << ',' << format_real(r.values.recall) << ','
            << format_real(r.values.f1) << ',' << format_real(r.values.f_beta) << '\n';
    }
}

void write_disk_sweep(std::ostream& out, const std::vector<DiskRow>& rows) {
    out << "radius,f1\n";
    for (const auto& r : rows) {
        out << r.radius << ',' << format_real(r.f1) << '\n';
    }
}

void write_detection_file(const fs::path& path, const std::vector<FrameDetections>& seq) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    write_detections_header(out);
    for (const auto& f : seq) {
        write_detections(out, f);
    }
    if (!out) {
        throw IoError(IoErrorKind::Unwritable, "cannot write " + path.string());
    }
}

FrameSet load_frames(const fs::path& dir, int parallelism) {
    FrameSet set;
    set.files = list_files(dir, {".pgm", ".png"});
    if (set.files.empty()) {
        throw IoError(IoErrorKind::Unreadable, "no .pgm or .png frames in " + dir.string());
    }
    set.frames.resize(set.files.size());
    parallel_for(set.files.size(), parallelism, [&](std::size_t i) { set.frames[i] = load_frame(set.files[i]); });
    for (std::size_t i = 1; i < set.frames.size(); ++i) {
        if (set.frames[i].width() != set.frames[0].width() || set.frames[i].height() != set.frames[0].height()) {
            throw DataError("frame " + set.files[i].filename().string() + " differs in size from " +
                            set.files[0].filename().string());
        }
    }
    return set;
}

MaskSet load_masks(const fs::path& dir) {
    MaskSet set;
    set.files = list_files(dir, {".pgm", ".png"});
    if (set.files.empty()) {
        throw IoError(IoErrorKind::Unreadable, "no masks in " + dir.string());
    }
    for (const auto& f : set.files) {
        set.masks.push_back(load_mask(f));
        if (set.masks.back().width() != set.masks.front().width() ||
            set.masks.back().height() != set.masks.front().height()) {
            throw DataError("mask " + f.filename().string() + " differs in size from the first mask");
        }
    }
    return set;
}

std::vector<std::vector<GroundTruthObject>> load_ground_truth(const fs::path& gt_dir,
                                                              const std::vector<fs::path>& files, int width,
                                                              int height) {
    std::vector<std::vector<GroundTruthObject>> gt;
    for (std::size_t t = 0; t < files.size(); ++t) {
        const auto path = gt_dir / (files[t].stem().string() + ".txt");
        gt.push_back(read_ground_truth(path, static_cast<int>(t)));
        check_ground_truth(gt.back(), width, height);
    }
    return gt;
}

void save_masks(const fs::path& out_dir, const std::vector<fs::path>& names, const std::vector<BinaryMask>& masks) {
    ensure_dir(out_dir);
    for (std::size_t i = 0; i < masks.size(); ++i) {
        save_mask(masks[i], out_dir / (names[i].stem().string() + ".pgm"));
    }
}

RunSummary run(const PipelineConfig& cfg) {
    cfg.validate();
    if (cfg.input_dir.empty() || cfg.output_dir.empty()) {
        throw ParameterError("run needs input_dir and output_dir");
    }
    const auto set = load_frames(cfg.input_dir, cfg.parallelism);
    const auto res = process_sequence(set.frames, cfg);

    std::vector<BinaryMask> thresholded;
    std::vector<BinaryMask> shaped;
    std::vector<BinaryMask> filtered;
    for (std::size_t t = 0; t < res.spatial.size(); ++t) {
        thresholded.push_back(res.spatial[t].thresholded);
        shaped.push_back(res.spatial[t].shaped);
        filtered.push_back(render_mask(res.temporal_detections[t]));
    }
    save_masks(cfg.output_dir / "threshold", set.files, thresholded);
    save_masks(cfg.output_dir / "morph", set.files, shaped);
    save_masks(cfg.output_dir / "temporal", set.files, filtered);
    write_detection_file(cfg.output_dir / "detections_spatial.csv", res.spatial_detections);
    write_detection_file(cfg.output_dir / "detections_temporal.csv", res.temporal_detections);

    RunSummary summary;
    summary.frames = set.frames.size();
    if (!cfg.gt_dir.empty()) {
        const auto gt = load_ground_truth(cfg.gt_dir, set.files, set.frames[0].width(), set.frames[0].height());
        summary.evaluated = true;
        summary.spatial_report = evaluate(res.spatial_detections, gt, cfg.lambda, cfg.beta2);
        summary.temporal_report = evaluate(res.temporal_detections, gt, cfg.lambda, cfg.beta2);
        write_report_file(cfg.output_dir / "metrics_spatial.csv", summary.spatial_report);
        write_report_file(cfg.output_dir / "metrics.csv", summary.temporal_report);
    }
    return summary;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    // lowest failing index wins, same as a serial run
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace vdpost
