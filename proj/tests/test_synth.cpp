#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"
#include "vdpost/io.hpp"
#include "vdpost/objects.hpp"
#include "vdpost/synth.hpp"
#include "vdpost/threshold.hpp"

namespace vdpost {
namespace {

SceneSpec one_vehicle() {
    SceneSpec s;
    s.width = 64;
    s.height = 32;
    s.frames = 6;
    s.background = 0.1;
    s.vehicles.push_back({4, 10, 5, 8, 0, 3, 0.9, 0});
    s.clutter.push_back({20, 40, 4, 6, 0.8});
    return s;
}

TEST(Render, VehicleTranslatesByVelocity) {
    const auto scene = render(one_vehicle());
    ASSERT_EQ(scene.frames.size(), 6u);
    EXPECT_EQ(scene.ground_truth[5][0], (GroundTruthObject{5, 4, 25, 5, 8}));
    EXPECT_EQ(scene.ground_truth[0][0], (GroundTruthObject{0, 4, 10, 5, 8}));
    EXPECT_DOUBLE_EQ(scene.frames[5](4, 25), 0.9);
    EXPECT_DOUBLE_EQ(scene.frames[5](4, 24), 0.1);
    EXPECT_DOUBLE_EQ(scene.frames[5](8, 32), 0.9);
    EXPECT_DOUBLE_EQ(scene.frames[5](8, 33), 0.1);
}

TEST(Render, ClutterIdenticalInEveryFrame) {
    const auto scene = render(one_vehicle());
    for (const auto& f : scene.frames) {
        for (int r = 20; r < 24; ++r) {
            for (int c = 40; c < 46; ++c) {
                EXPECT_DOUBLE_EQ(f(r, c), 0.8);
            }
        }
    }
}

TEST(Render, GapSplitsVehicleIntoTwoComponents) {
    auto spec = one_vehicle();
    spec.vehicles[0].gap = 2;
    spec.clutter.clear();
    const auto scene = render(spec);
    const auto d = label_components(fixed_threshold(scene.frames[0], 0.5));
    ASSERT_EQ(d.objects.size(), 2u);
    EXPECT_EQ(d.objects[0].area() + d.objects[1].area(), 5u * 6u);
}

TEST(Render, NoiseIsSeededAndBounded) {
    auto spec = one_vehicle();
    spec.noise = 0.3;
    spec.seed = 99;
    const auto a = render(spec);
    const auto b = render(spec);
    EXPECT_EQ(a.frames, b.frames);
    spec.seed = 100;
    EXPECT_NE(render(spec).frames, a.frames);
    // frames draw independent noise
    EXPECT_NE(a.frames[0](0, 0), a.frames[1](0, 0));
    for (const auto& f : a.frames) {
        for (double v : f.pixels()) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
    }
}

TEST(SceneSpec, Validation) {
    auto s = one_vehicle();
    s.vehicles[0].v_col = 10;  // col 10 + 5 * 10 + 8 > 64
    EXPECT_THROW(render(s), ParameterError);
    s = one_vehicle();
    s.clutter[0].row = 30;
    EXPECT_THROW(s.validate(), ParameterError);
    s = one_vehicle();
    s.vehicles[0].intensity = 0.05;
    EXPECT_THROW(s.validate(), ParameterError);
    s = one_vehicle();
    s.frames = 0;
    EXPECT_THROW(s.validate(), ParameterError);
    s = one_vehicle();
    s.noise = -0.1;
    EXPECT_THROW(s.validate(), ParameterError);
}

TEST(SceneText, RoundTrip) {
    auto spec = one_vehicle();
    spec.noise = 0.15;
    spec.seed = 12345;
    spec.vehicles.push_back({20, 2, 6, 10, 0, 4, 0.75, 2});
    std::ostringstream out;
    write_scene(out, spec);
    std::istringstream in(out.str());
    const auto back = parse_scene(in);
    std::ostringstream again;
    write_scene(again, back);
    EXPECT_EQ(again.str(), out.str());
    EXPECT_EQ(back.vehicles.size(), 2u);
    EXPECT_EQ(back.vehicles[1].gap, 2);
    EXPECT_EQ(back.seed, 12345u);
}

TEST(SceneText, Errors) {
    for (const char* text : {"width=abc\n", "colour=3\n", "vehicle=1,2,3\n", "width\n", "frames=2.5\n"}) {
        std::istringstream in(text);
        EXPECT_THROW(parse_scene(in), ParameterError) << text;
    }
    std::istringstream ok("# comment\nwidth=10 # trailing\n\nheight=12\n");
    const auto s = parse_scene(ok);
    EXPECT_EQ(s.width, 10);
    EXPECT_EQ(s.height, 12);
}

TEST(WriteRendered, Layout) {
    testing::TempDir dir("synth");
    const auto spec = one_vehicle();
    const auto scene = render(spec);
    write_rendered(scene, spec, dir.path());
    EXPECT_TRUE(std::filesystem::exists(dir / "scene.meta"));
    const auto files = list_files(dir.path() / "frames", {".pgm"});
    ASSERT_EQ(files.size(), 6u);
    EXPECT_EQ(files[3].filename(), "frame_0003.pgm");
    EXPECT_EQ(read_ground_truth(dir.path() / "gt" / "frame_0003.txt", 3), scene.ground_truth[3]);
    const auto raw = load_raw(files[0]);
    EXPECT_EQ(raw(4, 10), 230.0);  // round(0.9 * 255)
    EXPECT_EQ(raw(0, 0), 26.0);    // round(0.1 * 255)
}

TEST(RandomScene, DeterministicAndValid) {
    RandomSceneOptions opts;
    opts.seed = 4;
    opts.noise = 0.15;
    const auto a = random_scene(opts);
    const auto b = random_scene(opts);
    std::ostringstream sa, sb;
    write_scene(sa, a);
    write_scene(sb, b);
    EXPECT_EQ(sa.str(), sb.str());
    EXPECT_NO_THROW(a.validate());
    EXPECT_EQ(a.vehicles.size(), 5u);
    EXPECT_EQ(a.clutter.size(), 10u);
    for (const auto& v : a.vehicles) {
        EXPECT_GE(v.v_col, opts.min_speed);
        EXPECT_LE(v.v_col, opts.max_speed);
    }
    opts.seed = 5;
    std::ostringstream sc;
    write_scene(sc, random_scene(opts));
    EXPECT_NE(sc.str(), sa.str());
}

TEST(RandomScene, ObjectsNeverTouch) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        RandomSceneOptions opts;
        opts.seed = seed;
        const auto spec = random_scene(opts);
        const auto scene = render(spec);
        for (std::size_t t = 0; t < scene.frames.size(); ++t) {
            const auto d = label_components(fixed_threshold(scene.frames[t], 0.5));
            EXPECT_EQ(d.objects.size(), spec.vehicles.size() + spec.clutter.size()) << "seed " << seed;
        }
    }
}

}  // namespace
}  // namespace vdpost
