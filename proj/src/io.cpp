#include "vdpost/io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>

namespace vdpost {
namespace fs = std::filesystem;

namespace {

std::vector<unsigned char> read_all(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(IoErrorKind::Unreadable, "cannot open " + path.string());
    }
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError(IoErrorKind::Unreadable, "read failed for " + path.string());
    }
    return bytes;
}

class PgmReader {
public:
    PgmReader(const std::vector<unsigned char>& bytes, const fs::path& path) : bytes_(bytes), path_(path) {}

    RawImage read() {
        if (bytes_.size() < 2 || bytes_[0] != 'P' || (bytes_[1] != '2' && bytes_[1] != '5')) {
            throw IoError(IoErrorKind::MalformedHeader, path_.string() + ": not a P2/P5 PGM");
        }
        const bool binary = bytes_[1] == '5';
        pos_ = 2;
        const long width = header_int();
        const long height = header_int();
        const long maxval = header_int();
        if (width < 1 || height < 1 || width > (1L << 20) || height > (1L << 20)) {
            throw IoError(IoErrorKind::MalformedHeader, path_.string() + ": bad dimensions");
        }
        if (maxval < 1 || maxval > 65535) {
            throw IoError(IoErrorKind::UnsupportedFormat, path_.string() + ": unsupported maxval " + std::to_string(maxval));
        }
        // exactly one whitespace byte separates the header from the raster
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
            throw IoError(IoErrorKind::MalformedHeader, path_.string() + ": missing whitespace after maxval");
        }
        ++pos_;

        const auto n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
        std::vector<double> values(n);
        if (binary) {
            const std::size_t bps = maxval < 256 ? 1 : 2;
            if (bytes_.size() - pos_ < n * bps) {
                throw IoError(IoErrorKind::Truncated, path_.string() + ": raster truncated");
            }
            for (std::size_t i = 0; i < n; ++i) {
                unsigned v = bytes_[pos_++];
                if (bps == 2) {
                    v = (v << 8) | bytes_[pos_++];
                }
                values[i] = check_sample(v, maxval);
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                skip_space(false);
                if (pos_ >= bytes_.size()) {
                    throw IoError(IoErrorKind::Truncated, path_.string() + ": raster truncated");
                }
                values[i] = check_sample(ascii_int(), maxval);
            }
        }
        return RawImage(static_cast<int>(width), static_cast<int>(height), std::move(values));
    }

private:
    double check_sample(unsigned long v, long maxval) const {
        if (v > static_cast<unsigned long>(maxval)) {
            throw IoError(IoErrorKind::MalformedHeader, path_.string() + ": sample exceeds maxval");
        }
        return static_cast<double>(v);
    }

    void skip_space(bool comments) {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (comments && bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') {
                    ++pos_;
                }
            } else {
                break;
            }
        }
    }

    unsigned long ascii_int() {
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
            throw IoError(IoErrorKind::MalformedHeader, path_.string() + ": expected an integer");
        }
        unsigned long v = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            v = v * 10 + static_cast<unsigned long>(bytes_[pos_++] - '0');
            if (v > (1UL << 32)) {
                throw IoError(IoErrorKind::MalformedHeader, path_.string() + ": integer overflow");
            }
        }
        return v;
    }

    long header_int() {
        skip_space(true);
        if (pos_ >= bytes_.size()) {
            throw IoError(IoErrorKind::MalformedHeader, path_.string() + ": header truncated");
        }
        return static_cast<long>(ascii_int());
    }

    const std::vector<unsigned char>& bytes_;
    const fs::path& path_;
    std::size_t pos_ = 0;
};

constexpr std::array<unsigned char, 8> kPngSignature{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

RawImage read_png(const std::vector<unsigned char>& bytes, const fs::path& path) {
    // IHDR is always the first chunk: bit depth at byte 24, colour type at 25
    if (bytes.size() < 26 || std::memcmp(bytes.data() + 12, "IHDR", 4) != 0) {
        throw IoError(IoErrorKind::MalformedHeader, path.string() + ": missing IHDR");
    }
    if (bytes[24] != 8 || bytes[25] != 0) {
        throw IoError(IoErrorKind::UnsupportedFormat, path.string() + ": only 8-bit grayscale PNG is supported");
    }

    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    std::unique_ptr<png_image, decltype(&png_image_free)> guard(&image, &png_image_free);
    if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
        throw IoError(IoErrorKind::MalformedHeader, path.string() + ": " + image.message);
    }
    image.format = PNG_FORMAT_GRAY;
    std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        throw IoError(IoErrorKind::Truncated, path.string() + ": " + image.message);
    }
    std::vector<double> values(buffer.begin(), buffer.end());
    return RawImage(static_cast<int>(image.width), static_cast<int>(image.height), std::move(values));
}

void write_p5(const fs::path& path, int width, int height, const std::vector<unsigned char>& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(IoErrorKind::Unwritable, "cannot write " + path.string());
    }
    out << "P5\n" << width << ' ' << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(body.data()), static_cast<std::streamsize>(body.size()));
    if (!out) {
        throw IoError(IoErrorKind::Unwritable, "write failed for " + path.string());
    }
}

}  // namespace

RawImage load_raw(const fs::path& path) {
    const auto bytes = read_all(path);
    if (bytes.size() >= kPngSignature.size() && std::equal(kPngSignature.begin(), kPngSignature.end(), bytes.begin())) {
        return read_png(bytes, path);
    }
    return PgmReader(bytes, path).read();
}

SaliencyImage load_frame(const fs::path& path) { return normalize(load_raw(path)); }

void save_mask(const BinaryMask& mask, const fs::path& path) {
    std::vector<unsigned char> body(mask.size());
    std::transform(mask.labels().begin(), mask.labels().end(), body.begin(),
                   [](std::uint8_t v) -> unsigned char { return v ? 255 : 0; });
    write_p5(path, mask.width(), mask.height(), body);
}

BinaryMask load_mask(const fs::path& path) {
    const RawImage raw = load_raw(path);
    std::vector<std::uint8_t> labels(raw.size());
    std::transform(raw.pixels().begin(), raw.pixels().end(), labels.begin(),
                   [](double v) -> std::uint8_t { return v != 0.0 ? 1 : 0; });
    return BinaryMask(raw.width(), raw.height(), std::move(labels));
}

void save_frame(const SaliencyImage& img, const fs::path& path) {
    std::vector<unsigned char> body(img.pixels().size());
    std::transform(img.pixels().begin(), img.pixels().end(), body.begin(),
                   [](double v) { return static_cast<unsigned char>(std::lround(v * 255.0)); });
    write_p5(path, img.width(), img.height(), body);
}

std::vector<fs::path> list_files(const fs::path& dir, std::initializer_list<const char*> exts) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        throw IoError(IoErrorKind::Unreadable, "not a directory: " + dir.string());
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) {
            continue;
        }
        auto ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return std::tolower(ch); });
        if (std::any_of(exts.begin(), exts.end(), [&](const char* e) { return ext == e; })) {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
    return files;
}

}  // namespace vdpost
