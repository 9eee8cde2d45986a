// vdpost: spatio-temporal post-processing of aerial vehicle saliency maps.
//
// Exit codes: 0 success, 1 usage/config error, 2 I/O error, 3 data inconsistency.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vdpost/error.hpp"
#include "vdpost/io.hpp"
#include "vdpost/pipeline.hpp"
#include "vdpost/synth.hpp"

namespace fs = std::filesystem;
using namespace vdpost;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kIo = 2, kData = 3 };

// Pulls --key=value pairs naming config keys out of argv; CLI11 sees the rest.
KeyValues take_overrides(std::vector<std::string>& args) {
    KeyValues kv;
    const auto& keys = config_keys();
    std::vector<std::string> rest;
    for (const auto& a : args) {
        const auto eq = a.find('=');
        if (a.rfind("--", 0) == 0 && eq != std::string::npos) {
            const auto key = a.substr(2, eq - 2);
            if (std::find(keys.begin(), keys.end(), key) != keys.end()) {
                kv[key] = a.substr(eq + 1);
                continue;
            }
        }
        rest.push_back(a);
    }
    args = std::move(rest);
    return kv;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
    std::string s = text;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::vector<T> out;
    std::string tok;
    while (in >> tok) {
        std::istringstream one(tok);
        T v{};
        if (!(one >> v) || !one.eof()) {
            throw ParameterError(std::string("bad ") + what + " value '" + tok + "'");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw ParameterError(std::string("empty ") + what + " list");
    }
    return out;
}

// "-" writes to stdout.
template <typename Fn>
void emit(const std::string& target, Fn&& write) {
    if (target.empty() || target == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(target, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(IoErrorKind::Unwritable, "cannot write " + target);
    }
    write(out);
    if (!out) {
        throw IoError(IoErrorKind::Unwritable, "write failed for " + target);
    }
}

struct Options {
    std::string config_file;
    std::string in;
    std::string gt;
    std::string out;
    // gen-synth
    std::string scene;
    RandomSceneOptions random;
    // sweeps
    std::string lambdas = "0,0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5";
    std::string radii = "1,2,3,4,5,6,7";
};

int dispatch(CLI::App& app, const Options& o, const KeyValues& overrides) {
    const KeyValues file = o.config_file.empty() ? KeyValues{} : read_key_values(o.config_file);
    KeyValues kv = overrides;
    // subcommand flags map onto the directory keys
    if (!o.in.empty()) {
        kv["input_dir"] = o.in;
    }
    if (!o.gt.empty()) {
        kv["gt_dir"] = o.gt;
    }
    const PipelineConfig cfg = make_config(file, kv);
    auto require = [](const fs::path& p, const char* name) {
        if (p.empty()) {
            throw ParameterError(std::string("missing ") + name);
        }
    };

    if (app.got_subcommand("gen-synth")) {
        require(o.out, "--out");
        const SceneSpec spec = o.scene.empty() ? random_scene(o.random) : read_scene(o.scene);
        write_rendered(render(spec), spec, o.out);
        std::cout << "wrote " << spec.frames << " frames to " << o.out << '\n';
    } else if (app.got_subcommand("enhance")) {
        require(cfg.input_dir, "--in");
        require(o.out, "--out");
        const auto set = load_frames(cfg.input_dir, cfg.parallelism);
        fs::create_directories(o.out);
        for (std::size_t i = 0; i < set.frames.size(); ++i) {
            save_frame(enhance(set.frames[i]), fs::path(o.out) / (set.files[i].stem().string() + ".pgm"));
        }
    } else if (app.got_subcommand("threshold")) {
        require(cfg.input_dir, "--in");
        require(o.out, "--out");
        const auto set = load_frames(cfg.input_dir, cfg.parallelism);
        std::vector<BinaryMask> masks(set.frames.size());
        parallel_for(set.frames.size(), cfg.parallelism,
                     [&](std::size_t i) { masks[i] = hysteresis_threshold(enhance(set.frames[i]), cfg.threshold); });
        save_masks(o.out, set.files, masks);
    } else if (app.got_subcommand("morph")) {
        require(cfg.input_dir, "--in");
        require(o.out, "--out");
        auto set = load_masks(cfg.input_dir);
        parallel_for(set.masks.size(), cfg.parallelism,
                     [&](std::size_t i) { set.masks[i] = shape_mask(set.masks[i], cfg); });
        save_masks(o.out, set.files, set.masks);
    } else if (app.got_subcommand("temporal")) {
        require(cfg.input_dir, "--in");
        require(o.out, "--out");
        const auto set = load_masks(cfg.input_dir);
        std::vector<FrameDetections> before(set.masks.size());
        parallel_for(set.masks.size(), cfg.parallelism,
                     [&](std::size_t i) { before[i] = label_components(set.masks[i], static_cast<int>(i)); });
        const auto after = filter_static(before, cfg.temporal);
        std::vector<BinaryMask> kept;
        for (const auto& d : after) {
            kept.push_back(render_mask(d));
        }
        save_masks(o.out, set.files, kept);
        write_detection_file(fs::path(o.out) / "detections_spatial.csv", before);
        write_detection_file(fs::path(o.out) / "detections_temporal.csv", after);
    } else if (app.got_subcommand("evaluate") || app.got_subcommand("sweep-lambda")) {
        require(cfg.input_dir, "--in");
        require(cfg.gt_dir, "--gt");
        const auto set = load_masks(cfg.input_dir);
        std::vector<FrameDetections> det;
        for (std::size_t i = 0; i < set.masks.size(); ++i) {
            det.push_back(label_components(set.masks[i], static_cast<int>(i)));
        }
        const auto gt = load_ground_truth(cfg.gt_dir, set.files, set.masks[0].width(), set.masks[0].height());
        if (app.got_subcommand("evaluate")) {
            const auto report = evaluate(det, gt, cfg.lambda, cfg.beta2);
            emit(o.out, [&](std::ostream& os) { write_report(os, report); });
        } else {
            const auto rows = sweep_lambda(det, gt, parse_list<double>(o.lambdas, "lambda"), cfg.beta2);
            emit(o.out, [&](std::ostream& os) { write_lambda_sweep(os, rows); });
        }
    } else if (app.got_subcommand("sweep-disk")) {
        require(cfg.input_dir, "--in");
        require(cfg.gt_dir, "--gt");
        const auto set = load_frames(cfg.input_dir, cfg.parallelism);
        const auto gt = load_ground_truth(cfg.gt_dir, set.files, set.frames[0].width(), set.frames[0].height());
        const auto rows = sweep_disk(set.frames, gt, cfg, parse_list<int>(o.radii, "radius"));
        emit(o.out, [&](std::ostream& os) { write_disk_sweep(os, rows); });
    } else if (app.got_subcommand("run")) {
        PipelineConfig c = cfg;
        if (!o.out.empty()) {
            c.output_dir = o.out;
        }
        require(c.input_dir, "--in or input_dir");
        require(c.output_dir, "--out or output_dir");
        const auto summary = run(c);
        std::cout << "processed " << summary.frames << " frames into " << c.output_dir.string() << '\n';
        if (summary.evaluated) {
            const auto& before = summary.spatial_report.pooled;
            const auto& after = summary.temporal_report.pooled;
            std::cout << "spatial:  tp=" << before.tp << " fn=" << before.fn << " fp=" << before.fp << '\n'
                      << "temporal: tp=" << after.tp << " fn=" << after.fn << " fp=" << after.fp << '\n';
        }
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const KeyValues overrides = take_overrides(args);

    CLI::App app{"Spatio-temporal post-processing for aerial vehicle detection", "vdpost"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--config", o.config_file, "Flat key=value configuration file")->check(CLI::ExistingFile);
    app.footer("Any configuration key may be overridden as --key=value, e.g. --threshold.hi=0.6 --profile=high_res.");

    auto* gen = app.add_subcommand("gen-synth", "Render a synthetic registered scene with ground truth");
    gen->add_option("--scene", o.scene, "Scene spec (key=value); omit for a random lane scene");
    gen->add_option("--vehicles", o.random.vehicles, "Random scene: vehicle count");
    gen->add_option("--clutter", o.random.clutter, "Random scene: static clutter blobs");
    gen->add_option("--frames", o.random.frames, "Random scene: frame count");
    gen->add_option("--noise", o.random.noise, "Random scene: uniform noise amplitude");
    gen->add_option("--background", o.random.background, "Random scene: background intensity");
    gen->add_option("--gap", o.random.gap, "Random scene: fragmentation gap through each vehicle");
    gen->add_option("--seed", o.random.seed, "Random scene: seed");
    gen->add_option("--out", o.out, "Output directory")->required();

    auto stage = [&](const char* name, const char* help, const char* in_help, const char* out_help) {
        auto* sc = app.add_subcommand(name, help);
        sc->add_option("--in", o.in, in_help);
        sc->add_option("--out", o.out, out_help);
        return sc;
    };
    stage("enhance", "Normalize frames and pass them through the enhancer stub", "Frame directory", "Output directory");
    stage("threshold", "Multi-neighborhood hysteresis thresholding", "Frame directory", "Mask directory");
    stage("morph", "Opening with square(open_size), closing with disk(close_radius)", "Mask directory",
          "Mask directory");
    stage("temporal", "Label components and drop static detections", "Mask directory", "Output directory");
    auto* ev = stage("evaluate", "Classify detections against ground truth", "Mask directory", "Report CSV ('-' = stdout)");
    ev->add_option("--gt", o.gt, "Ground-truth directory");
    auto* runc = stage("run", "Full pipeline with all intermediate artifacts", "Frame directory", "Output directory");
    runc->add_option("--gt", o.gt, "Ground-truth directory");
    auto* sl = stage("sweep-lambda", "Metrics over a range of overlap thresholds", "Mask directory", "CSV ('-' = stdout)");
    sl->add_option("--gt", o.gt, "Ground-truth directory");
    sl->add_option("--lambdas", o.lambdas, "Comma-separated overlap thresholds");
    auto* sd = stage("sweep-disk", "F1 versus closing disk radius", "Frame directory", "CSV ('-' = stdout)");
    sd->add_option("--gt", o.gt, "Ground-truth directory");
    sd->add_option("--radii", o.radii, "Comma-separated disk radii");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        return dispatch(app, o, overrides);
    } catch (const IoError& e) {
        std::cerr << "vdpost: I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "vdpost: I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const ParameterError& e) {
        std::cerr << "vdpost: configuration error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "vdpost: data error: " << e.what() << '\n';
        return kData;
    }
}
