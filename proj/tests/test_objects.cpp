#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles/oracles.hpp"
#include "support.hpp"
#include "vdpost/objects.hpp"

namespace vdpost {
namespace {

using testing::mask_from_rows;

std::set<std::set<Pixel>> partition_of(const FrameDetections& d) {
    std::set<std::set<Pixel>> parts;
    for (const auto& o : d.objects) {
        parts.emplace(o.pixels().begin(), o.pixels().end());
    }
    return parts;
}

TEST(LabelComponents, DiagonalNeighborsJoin) {
    const auto d = label_components(mask_from_rows({"#..", ".#.", "..."}));
    ASSERT_EQ(d.objects.size(), 1u);
    EXPECT_EQ(d.objects[0].area(), 2u);
}

TEST(LabelComponents, AntiDiagonalJoins) {
    const auto d = label_components(mask_from_rows({"..#", ".#.", "#.."}));
    ASSERT_EQ(d.objects.size(), 1u);
}

TEST(LabelComponents, GapSeparates) {
    const auto d = label_components(mask_from_rows({"#.#"}));
    ASSERT_EQ(d.objects.size(), 2u);
    EXPECT_EQ(d.objects[0].id(), 1);
    EXPECT_EQ(d.objects[1].id(), 2);
}

TEST(LabelComponents, EmptyMask) { EXPECT_TRUE(label_components(BinaryMask(4, 4)).objects.empty()); }

TEST(LabelComponents, UShapeMergesLate) {
    // the two arms get different provisional labels and meet on the last row
    const auto d = label_components(mask_from_rows({"#...#", "#...#", "#####", "..#..", "#...."}));
    ASSERT_EQ(d.objects.size(), 2u);
    EXPECT_EQ(d.objects[0].area(), 10u);
    EXPECT_EQ(d.objects[1].area(), 1u);
    EXPECT_EQ(d.objects[1].pixels()[0], (Pixel{4, 0}));
}

TEST(LabelComponents, IdsInRasterOrderOfFirstPixel) {
    const auto d = label_components(mask_from_rows({"...#", "#..#", "#...", "..##"}), 7);
    EXPECT_EQ(d.frame_index, 7);
    ASSERT_EQ(d.objects.size(), 3u);
    EXPECT_EQ(d.objects[0].pixels().front(), (Pixel{0, 3}));
    EXPECT_EQ(d.objects[1].pixels().front(), (Pixel{1, 0}));
    EXPECT_EQ(d.objects[2].pixels().front(), (Pixel{3, 2}));
}

TEST(LabelComponents, MatchesFloodFill) {
    std::mt19937_64 gen(41);
    for (int trial = 0; trial < 400; ++trial) {
        const auto m = testing::random_mask(gen, 1 + static_cast<int>(gen() % 20), 1 + static_cast<int>(gen() % 20),
                                            0.2 + 0.1 * (trial % 6));
        const auto d = label_components(m);
        ASSERT_EQ(partition_of(d), oracle::flood_fill_partition(m));
        EXPECT_EQ(render_mask(d), m);
        EXPECT_EQ(label_components(m), d);
    }
}

TEST(LabelComponents, TranslationEquivariance) {
    std::mt19937_64 gen(43);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = testing::random_mask(gen, 10, 10, 0.35);
        BinaryMask shifted(15, 13);
        for (int r = 0; r < 10; ++r) {
            for (int c = 0; c < 10; ++c) {
                shifted.set(r + 3, c + 5, m(r, c));
            }
        }
        const auto a = label_components(m);
        const auto b = label_components(shifted);
        ASSERT_EQ(a.objects.size(), b.objects.size());
        for (std::size_t i = 0; i < a.objects.size(); ++i) {
            EXPECT_DOUBLE_EQ(b.objects[i].centroid().row, a.objects[i].centroid().row + 3);
            EXPECT_DOUBLE_EQ(b.objects[i].centroid().col, a.objects[i].centroid().col + 5);
            const auto& ba = a.objects[i].bbox();
            EXPECT_EQ(b.objects[i].bbox(), (BoundingBox{ba.min_row + 3, ba.min_col + 5, ba.max_row + 3, ba.max_col + 5}));
        }
    }
}

TEST(Centroid, Examples) {
    EXPECT_EQ(centroid(DetectedObject(1, {{3, 7}})), (Centroid{3.0, 7.0}));
    EXPECT_EQ(centroid(DetectedObject(1, {{0, 0}, {0, 1}, {1, 0}, {1, 1}})), (Centroid{0.5, 0.5}));
    const auto l = centroid(DetectedObject(1, {{0, 0}, {1, 0}, {1, 1}}));
    EXPECT_DOUBLE_EQ(l.row, 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(l.col, 1.0 / 3.0);
}

TEST(DetectedObject, GeometryAndValidation) {
    const DetectedObject o(4, {{2, 5}, {1, 6}, {3, 4}});
    EXPECT_EQ(o.area(), 3u);
    EXPECT_EQ(o.bbox(), (BoundingBox{1, 4, 3, 6}));
    EXPECT_EQ(o.pixels().front(), (Pixel{1, 6}));
    EXPECT_THROW(DetectedObject(1, {}), ParameterError);
    EXPECT_THROW(DetectedObject(1, {{0, 0}, {0, 0}}), ParameterError);
}

TEST(WriteDetections, OneLinePerObject) {
    const auto d = label_components(mask_from_rows({"##..", "##..", "...#"}), 3);
    std::ostringstream out;
    write_detections(out, d);
    EXPECT_EQ(out.str(), "3,1,4,0.5,0.5,0,0,1,1\n3,2,1,2,3,2,3,2,3\n");
}

}  // namespace
}  // namespace vdpost
