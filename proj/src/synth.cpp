#include "vdpost/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "vdpost/format.hpp"
#include "vdpost/io.hpp"

namespace vdpost {
namespace fs = std::filesystem;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// [0, 1) with 53 random bits; independent of the standard library's distributions.
double unit(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

int uniform_int(std::mt19937_64& gen, int lo, int hi) {
    return lo + static_cast<int>(gen() % static_cast<std::uint64_t>(hi - lo + 1));
}

bool rect_inside(int row, int col, int h, int w, int width, int height) {
    return row >= 0 && col >= 0 && row + h <= height && col + w <= width;
}

void check_intensity(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ParameterError(std::string(what) + " intensity must lie in [0, 1]");
    }
}

void fill(Grid<double>& g, int row, int col, int h, int w, double v) {
    for (int r = row; r < row + h; ++r) {
        for (int c = col; c < col + w; ++c) {
            g(r, c) = v;
        }
    }
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<double> numbers(const std::string& value, const std::string& key) {
    std::string v = value;
    std::replace(v.begin(), v.end(), ',', ' ');
    std::istringstream in(v);
    std::vector<double> out;
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        double d = 0.0;
        try {
            d = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size()) {
            throw ParameterError("scene key '" + key + "': bad number '" + tok + "'");
        }
        out.push_back(d);
    }
    return out;
}

int as_int(double d, const std::string& key) {
    if (d != std::floor(d) || std::abs(d) > 1e9) {
        throw ParameterError("scene key '" + key + "' expects an integer");
    }
    return static_cast<int>(d);
}

}  // namespace

void SceneSpec::validate() const {
    if (width < 1 || height < 1) {
        throw ParameterError("scene width and height must be positive");
    }
    if (frames < 1) {
        throw ParameterError("scene needs at least one frame");
    }
    check_intensity(background, "background");
    if (!(noise >= 0.0 && noise <= 1.0)) {
        throw ParameterError("noise amplitude must lie in [0, 1]");
    }
    for (const auto& v : vehicles) {
        check_intensity(v.intensity, "vehicle");
        if (!(v.intensity > background)) {
            throw ParameterError("vehicles must be brighter than the background");
        }
        if (v.height < 1 || v.width < 1 || v.gap < 0 || (v.gap > 0 && v.gap > v.width - 2)) {
            throw ParameterError("vehicle size or gap out of range");
        }
        for (int t = 0; t < frames; ++t) {
            if (!rect_inside(v.row + t * v.v_row, v.col + t * v.v_col, v.height, v.width, width, height)) {
                throw ParameterError("vehicle leaves the frame at frame " + std::to_string(t));
            }
        }
    }
    for (const auto& c : clutter) {
        check_intensity(c.intensity, "clutter");
        if (c.height < 1 || c.width < 1 || !rect_inside(c.row, c.col, c.height, c.width, width, height)) {
            throw ParameterError("clutter blob outside the frame");
        }
    }
}

RenderedScene render(const SceneSpec& spec) {
    spec.validate();
    RenderedScene scene;
    for (int t = 0; t < spec.frames; ++t) {
        Grid<double> g(spec.width, spec.height, spec.background);
        for (const auto& c : spec.clutter) {
            fill(g, c.row, c.col, c.height, c.width, c.intensity);
        }
        std::vector<GroundTruthObject> gt;
        for (const auto& v : spec.vehicles) {
            const int row = v.row + t * v.v_row;
            const int col = v.col + t * v.v_col;
            fill(g, row, col, v.height, v.width, v.intensity);
            if (v.gap > 0) {
                fill(g, row, col + (v.width - v.gap) / 2, v.height, v.gap, spec.background);
            }
            gt.push_back({t, row, col, v.height, v.width});
        }
        if (spec.noise > 0.0) {
            std::mt19937_64 gen(splitmix64(spec.seed + static_cast<std::uint64_t>(t)));
            for (auto& px : g.pixels()) {
                px = std::clamp(px + spec.noise * (2.0 * unit(gen) - 1.0), 0.0, 1.0);
            }
        }
        scene.frames.emplace_back(std::move(g));
        scene.ground_truth.push_back(std::move(gt));
    }
    return scene;
}

SceneSpec parse_scene(std::istream& in) {
    SceneSpec spec;
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParameterError("scene line without '=': " + line);
        }
        const std::string key = trim(line.substr(0, eq));
        const auto vals = numbers(line.substr(eq + 1), key);
        auto scalar = [&]() {
            if (vals.size() != 1) {
                throw ParameterError("scene key '" + key + "' expects one value");
            }
            return vals[0];
        };
        if (key == "width") {
            spec.width = as_int(scalar(), key);
        } else if (key == "height") {
            spec.height = as_int(scalar(), key);
        } else if (key == "frames") {
            spec.frames = as_int(scalar(), key);
        } else if (key == "background") {
            spec.background = scalar();
        } else if (key == "noise") {
            spec.noise = scalar();
        } else if (key == "seed") {
            const double s = scalar();
            if (s < 0 || s != std::floor(s)) {
                throw ParameterError("seed must be a non-negative integer");
            }
            spec.seed = static_cast<std::uint64_t>(s);
        } else if (key == "vehicle") {
            if (vals.size() != 7 && vals.size() != 8) {
                throw ParameterError("vehicle expects row,col,height,width,v_row,v_col,intensity[,gap]");
            }
            spec.vehicles.push_back({as_int(vals[0], key), as_int(vals[1], key), as_int(vals[2], key),
                                     as_int(vals[3], key), as_int(vals[4], key), as_int(vals[5], key), vals[6],
                                     vals.size() == 8 ? as_int(vals[7], key) : 0});
        } else if (key == "clutter") {
            if (vals.size() != 5) {
                throw ParameterError("clutter expects row,col,height,width,intensity");
            }
            spec.clutter.push_back(
                {as_int(vals[0], key), as_int(vals[1], key), as_int(vals[2], key), as_int(vals[3], key), vals[4]});
        } else {
            throw ParameterError("unknown scene key '" + key + "'");
        }
    }
    return spec;
}

SceneSpec read_scene(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError(IoErrorKind::Unreadable, "cannot open scene " + path.string());
    }
    return parse_scene(in);
}

void write_scene(std::ostream& out, const SceneSpec& spec) {
    out << "width=" << spec.width << "\nheight=" << spec.height << "\nframes=" << spec.frames
        << "\nbackground=" << format_real(spec.background) << "\nnoise=" << format_real(spec.noise)
        << "\nseed=" << spec.seed << '\n';
    for (const auto& v : spec.vehicles) {
        out << "vehicle=" << v.row << ',' << v.col << ',' << v.height << ',' << v.width << ',' << v.v_row << ','
            << v.v_col << ',' << format_real(v.intensity) << ',' << v.gap << '\n';
    }
    for (const auto& c : spec.clutter) {
        out << "clutter=" << c.row << ',' << c.col << ',' << c.height << ',' << c.width << ','
            << format_real(c.intensity) << '\n';
    }
}

void write_rendered(const RenderedScene& scene, const SceneSpec& spec, const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir / "frames", ec);
    fs::create_directories(dir / "gt", ec);
    if (ec) {
        throw IoError(IoErrorKind::Unwritable, "cannot create " + dir.string() + ": " + ec.message());
    }
    for (std::size_t t = 0; t < scene.frames.size(); ++t) {
        char stem[32];
        std::snprintf(stem, sizeof stem, "frame_%04zu", t);
        save_frame(scene.frames[t], dir / "frames" / (std::string(stem) + ".pgm"));
        std::ofstream gt(dir / "gt" / (std::string(stem) + ".txt"), std::ios::binary);
        write_ground_truth(gt, scene.ground_truth[t]);
        if (!gt) {
            throw IoError(IoErrorKind::Unwritable, "cannot write ground truth under " + dir.string());
        }
    }
    std::ofstream meta(dir / "scene.meta", std::ios::binary);
    meta << "# rng: " << kSceneRng << '\n';
    write_scene(meta, spec);
    if (!meta) {
        throw IoError(IoErrorKind::Unwritable, "cannot write " + (dir / "scene.meta").string());
    }
}

SceneSpec random_scene(const RandomSceneOptions& opts) {
    if (opts.vehicles < 0 || opts.clutter < 0 || opts.frames < 1 || opts.min_speed < 0 ||
        opts.max_speed < opts.min_speed || opts.gap < 0) {
        throw ParameterError("invalid random scene options");
    }
    constexpr int kLanePitch = 24;
    constexpr int kTop = 4;
    const int strips = std::max(opts.vehicles, 1);
    const int min_vehicle_width = std::max(10, opts.gap + 6);
    const int max_vehicle_width = min_vehicle_width + 4;
    const int travel = (opts.frames - 1) * opts.max_speed;

    std::mt19937_64 gen(splitmix64(opts.seed));
    SceneSpec spec;
    spec.frames = opts.frames;
    spec.height = kTop + strips * kLanePitch + 4;
    spec.width = std::max(128, travel + max_vehicle_width + 32);
    spec.background = opts.background;
    spec.noise = opts.noise;
    spec.seed = splitmix64(opts.seed ^ 0x5eedULL);

    for (int k = 0; k < opts.vehicles; ++k) {
        const int lane = kTop + k * kLanePitch;
        VehicleSpec v;
        v.height = uniform_int(gen, 6, 8);
        v.width = uniform_int(gen, min_vehicle_width, max_vehicle_width);
        v.v_col = uniform_int(gen, opts.min_speed, opts.max_speed);
        v.row = lane + (8 - v.height) / 2;
        v.col = uniform_int(gen, 2, spec.width - v.width - (opts.frames - 1) * v.v_col - 2);
        v.intensity = 0.65 + 0.2 * unit(gen);
        v.gap = opts.gap;
        spec.vehicles.push_back(v);
    }

    const int per_strip = (opts.clutter + strips - 1) / strips;
    const int slot = per_strip > 0 ? spec.width / per_strip : spec.width;
    if (slot < 17) {
        throw ParameterError("too much clutter for the frame width");
    }
    for (int k = 0; k < opts.clutter; ++k) {
        const int strip = k % strips;
        const int index = k / strips;
        ClutterSpec c;
        c.height = uniform_int(gen, 5, 9);
        c.width = uniform_int(gen, 5, std::min(12, slot - 8));
        c.row = kTop + strip * kLanePitch + 11;
        c.col = index * slot + uniform_int(gen, 4, slot - c.width - 4);
        c.intensity = 0.7 + 0.2 * unit(gen);
        spec.clutter.push_back(c);
    }
    return spec;
}

}  // namespace vdpost
