#include <gtest/gtest.h>
#include <png.h>

#include <random>

#include "support.hpp"
#include "vdpost/io.hpp"

namespace vdpost {
namespace {

using testing::TempDir;

RawImage raw_row(std::vector<double> v) {
    const int w = static_cast<int>(v.size());
    return RawImage(w, 1, std::move(v));
}

void write_png(const std::filesystem::path& path, int w, int h, png_uint_32 format, const std::vector<png_byte>& px) {
    png_image img{};
    img.version = PNG_IMAGE_VERSION;
    img.width = static_cast<png_uint_32>(w);
    img.height = static_cast<png_uint_32>(h);
    img.format = format;
    ASSERT_TRUE(png_image_write_to_file(&img, path.c_str(), 0, px.data(), 0, nullptr)) << img.message;
}

IoErrorKind io_kind(const std::filesystem::path& p) {
    try {
        load_frame(p);
    } catch (const IoError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected IoError for " << p;
    return IoErrorKind::Unwritable;
}

TEST(Normalize, EightBitEndpoints) {
    const auto s = normalize(raw_row({0, 128, 255}));
    EXPECT_DOUBLE_EQ(s(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(s(0, 1), 128.0 / 255.0);
    EXPECT_NEAR(s(0, 1), 0.50196, 1e-5);
    EXPECT_DOUBLE_EQ(s(0, 2), 1.0);
}

TEST(Normalize, ConstantImageIsAllZero) {
    const auto s = normalize(RawImage(3, 2, 77.0));
    for (double v : s.pixels()) {
        EXPECT_EQ(v, 0.0);
    }
}

TEST(Normalize, MinMaxFormula) {
    const auto s = normalize(raw_row({10, 20, 30}));
    EXPECT_DOUBLE_EQ(s(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(s(0, 1), 0.5);
    EXPECT_DOUBLE_EQ(s(0, 2), 1.0);
}

TEST(Normalize, EmptyImageIsDimensionError) {
    EXPECT_THROW(normalize(RawImage{}), DimensionError);
    EXPECT_THROW(RawImage(0, 3), DimensionError);
}

TEST(Normalize, IdempotentAndSpansUnitInterval) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> val(-1000.0, 1000.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int w = 1 + static_cast<int>(gen() % 12);
        const int h = 1 + static_cast<int>(gen() % 12);
        std::vector<double> v(static_cast<std::size_t>(w * h));
        for (auto& x : v) {
            x = val(gen);
        }
        if (v.size() == 1) {
            continue;
        }
        const auto once = normalize(RawImage(w, h, v));
        const auto twice = normalize(once.grid());
        EXPECT_EQ(once, twice);
        EXPECT_EQ(*std::min_element(once.pixels().begin(), once.pixels().end()), 0.0);
        EXPECT_EQ(*std::max_element(once.pixels().begin(), once.pixels().end()), 1.0);
    }
}

TEST(SaliencyImage, RejectsOutOfRangeValues) {
    EXPECT_THROW(SaliencyImage(1, 1, {1.5}), ParameterError);
    EXPECT_THROW(SaliencyImage(1, 1, {-0.1}), ParameterError);
    EXPECT_THROW(SaliencyImage(2, 1, {0.5}), DimensionError);
}

TEST(LoadFrame, AsciiPgm) {
    TempDir dir("img");
    testing::write_bytes(dir / "a.pgm", "P2\n# comment\n2 2\n255\n0 255 128 64\n");
    const auto s = load_frame(dir / "a.pgm");
    ASSERT_EQ(s.width(), 2);
    ASSERT_EQ(s.height(), 2);
    EXPECT_DOUBLE_EQ(s(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(s(0, 1), 1.0);
    EXPECT_NEAR(s(1, 0), 0.50196, 1e-5);
    EXPECT_NEAR(s(1, 1), 0.25098, 1e-5);
}

TEST(LoadFrame, SinglePixelIsZero) {
    TempDir dir("img");
    testing::write_bytes(dir / "a.pgm", "P2 1 1 255 5");
    const auto s = load_frame(dir / "a.pgm");
    EXPECT_EQ(s(0, 0), 0.0);
}

TEST(LoadFrame, BinaryPgmEightAndSixteenBit) {
    TempDir dir("img");
    testing::write_bytes(dir / "8.pgm", std::string("P5\n3 1\n255\n") + '\x00' + '\x7f' + '\xff');
    const auto a = load_raw(dir / "8.pgm");
    EXPECT_EQ(a(0, 0), 0.0);
    EXPECT_EQ(a(0, 1), 127.0);
    EXPECT_EQ(a(0, 2), 255.0);

    testing::write_bytes(dir / "16.pgm", std::string("P5 2 1 65535\n") + '\x01' + '\x02' + '\xff' + '\xff');
    const auto b = load_raw(dir / "16.pgm");
    EXPECT_EQ(b(0, 0), 258.0);
    EXPECT_EQ(b(0, 1), 65535.0);
}

TEST(LoadFrame, DistinctErrorKinds) {
    TempDir dir("img");
    testing::write_bytes(dir / "trunc.pgm", "P2\n2 2\n255\n0 1 2\n");
    testing::write_bytes(dir / "trunc5.pgm", "P5\n2 2\n255\nab");
    testing::write_bytes(dir / "magic.pgm", "P6\n1 1\n255\nabc");
    testing::write_bytes(dir / "header.pgm", "P5\n2 x\n255\nab");
    testing::write_bytes(dir / "depth.pgm", "P5\n1 1\n70000\nab");
    testing::write_bytes(dir / "over.pgm", "P2\n1 1\n10\n11\n");

    EXPECT_EQ(io_kind(dir / "trunc.pgm"), IoErrorKind::Truncated);
    EXPECT_EQ(io_kind(dir / "trunc5.pgm"), IoErrorKind::Truncated);
    EXPECT_EQ(io_kind(dir / "magic.pgm"), IoErrorKind::MalformedHeader);
    EXPECT_EQ(io_kind(dir / "header.pgm"), IoErrorKind::MalformedHeader);
    EXPECT_EQ(io_kind(dir / "depth.pgm"), IoErrorKind::UnsupportedFormat);
    EXPECT_EQ(io_kind(dir / "over.pgm"), IoErrorKind::MalformedHeader);
    EXPECT_EQ(io_kind(dir / "missing.pgm"), IoErrorKind::Unreadable);
}

TEST(LoadFrame, GrayscalePng) {
    TempDir dir("img");
    write_png(dir / "g.png", 3, 2, PNG_FORMAT_GRAY, {10, 20, 30, 40, 50, 60});
    const auto raw = load_raw(dir / "g.png");
    ASSERT_EQ(raw.width(), 3);
    ASSERT_EQ(raw.height(), 2);
    EXPECT_EQ(raw(1, 2), 60.0);
    const auto s = load_frame(dir / "g.png");
    EXPECT_DOUBLE_EQ(s(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(s(1, 2), 1.0);
    EXPECT_DOUBLE_EQ(s(0, 2), 0.4);
}

TEST(LoadFrame, ColourPngIsUnsupported) {
    TempDir dir("img");
    write_png(dir / "c.png", 1, 1, PNG_FORMAT_RGB, {1, 2, 3});
    EXPECT_EQ(io_kind(dir / "c.png"), IoErrorKind::UnsupportedFormat);
}

TEST(SaveMask, FixedEncoding) {
    TempDir dir("img");
    BinaryMask m(2, 2, {1, 0, 0, 1});
    save_mask(m, dir / "m.pgm");
    EXPECT_EQ(testing::read_bytes(dir / "m.pgm"), std::string("P5\n2 2\n255\n") + '\xff' + '\x00' + '\x00' + '\xff');

    save_mask(BinaryMask(3, 1), dir / "z.pgm");
    EXPECT_EQ(testing::read_bytes(dir / "z.pgm"), std::string("P5\n3 1\n255\n") + std::string(3, '\0'));
}

TEST(SaveMask, RoundTripIsIdentity) {
    TempDir dir("img");
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 50; ++trial) {
        const auto m = testing::random_mask(gen, 1 + static_cast<int>(gen() % 40), 1 + static_cast<int>(gen() % 40));
        save_mask(m, dir / "m.pgm");
        const auto bytes = testing::read_bytes(dir / "m.pgm");
        const auto back = load_mask(dir / "m.pgm");
        EXPECT_EQ(back, m);
        save_mask(back, dir / "m2.pgm");
        EXPECT_EQ(testing::read_bytes(dir / "m2.pgm"), bytes);
    }
}

TEST(SaveMask, UnwritablePath) {
    try {
        save_mask(BinaryMask(1, 1), "/nonexistent-dir/x/m.pgm");
        FAIL() << "expected IoError";
    } catch (const IoError& e) {
        EXPECT_EQ(e.kind(), IoErrorKind::Unwritable);
    }
}

TEST(ListFiles, SortedByFilenameAndFiltered) {
    TempDir dir("img");
    for (const char* n : {"frame_0010.pgm", "frame_0002.pgm", "notes.txt", "frame_0001.PNG"}) {
        testing::write_bytes(dir / n, "x");
    }
    const auto files = list_files(dir.path(), {".pgm", ".png"});
    ASSERT_EQ(files.size(), 3u);
    EXPECT_EQ(files[0].filename(), "frame_0001.PNG");
    EXPECT_EQ(files[1].filename(), "frame_0002.pgm");
    EXPECT_EQ(files[2].filename(), "frame_0010.pgm");
}

}  // namespace
}  // namespace vdpost
