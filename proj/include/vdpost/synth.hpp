#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "vdpost/image.hpp"
#include "vdpost/metrics.hpp"

namespace vdpost {

/// Filled rectangle translated by (v_row, v_col) every frame. A nonzero gap
/// paints a vertical stripe of background columns through the middle, which
/// fragments the vehicle the way windshields and roof racks do.
struct VehicleSpec {
    int row = 0;
    int col = 0;
    int height = 1;
    int width = 1;
    int v_row = 0;
    int v_col = 0;
    double intensity = 1.0;
    int gap = 0;
};

/// Bright static blob, identical in every frame.
struct ClutterSpec {
    int row = 0;
    int col = 0;
    int height = 1;
    int width = 1;
    double intensity = 1.0;
};

struct SceneSpec {
    int width = 64;
    int height = 64;
    int frames = 1;
    double background = 0.0;
    /// Uniform noise in [-noise, +noise], added then clipped to [0, 1].
    double noise = 0.0;
    std::uint64_t seed = 0;
    std::vector<VehicleSpec> vehicles;
    std::vector<ClutterSpec> clutter;

    /// Throws ParameterError for out-of-range values, vehicles not brighter
    /// than the background, or any object leaving the frame in any frame.
    void validate() const;
};

/// Identifies the noise generator so other implementations can reproduce scenes.
inline constexpr const char* kSceneRng = "mt19937_64 seeded per frame with splitmix64(seed + frame)";

struct RenderedScene {
    std::vector<SaliencyImage> frames;
    /// ground_truth[t] holds the vehicle rectangles of frame t.
    std::vector<std::vector<GroundTruthObject>> ground_truth;
};

RenderedScene render(const SceneSpec& spec);

/// Flat key=value text. Scalars: width, height, frames, background, noise,
/// seed. Repeatable: vehicle=row,col,height,width,v_row,v_col,intensity[,gap]
/// and clutter=row,col,height,width,intensity. '#' starts a comment.
SceneSpec parse_scene(std::istream& in);
SceneSpec read_scene(const std::filesystem::path& path);
void write_scene(std::ostream& out, const SceneSpec& spec);

/// Writes frames/frame_NNNN.pgm, gt/frame_NNNN.txt and scene.meta under dir.
void write_rendered(const RenderedScene& scene, const SceneSpec& spec, const std::filesystem::path& dir);

/// Lane layout: each vehicle drives along its own horizontal lane, clutter
/// sits in strips between lanes, so objects never touch.
struct RandomSceneOptions {
    int vehicles = 5;
    int clutter = 10;
    int frames = 10;
    double noise = 0.0;
    double background = 0.2;
    int min_speed = 4;
    int max_speed = 6;
    /// Background columns through the middle of every vehicle.
    int gap = 0;
    std::uint64_t seed = 0;
};

SceneSpec random_scene(const RandomSceneOptions& opts);

}  // namespace vdpost
