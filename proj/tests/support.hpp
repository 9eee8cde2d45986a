#pragma once

#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>

#include "vdpost/image.hpp"

namespace vdpost::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::mt19937_64 gen(std::random_device{}());
        path_ = std::filesystem::temp_directory_path() / ("vdpost_" + tag + "_" + std::to_string(gen()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

inline std::string read_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_bytes(const std::filesystem::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary);
    out << bytes;
}

inline BinaryMask random_mask(std::mt19937_64& gen, int w, int h, double density = 0.5) {
    std::bernoulli_distribution fg(density);
    BinaryMask m(w, h);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            m.set(r, c, fg(gen));
        }
    }
    return m;
}

/// Mask whose bit i (raster order) is bit i of `bits`.
inline BinaryMask mask_from_bits(unsigned bits, int w, int h) {
    BinaryMask m(w, h);
    for (int i = 0; i < w * h; ++i) {
        m.set(i / w, i % w, (bits >> i) & 1U);
    }
    return m;
}

inline BinaryMask mask_from_rows(std::initializer_list<const char*> rows) {
    const int h = static_cast<int>(rows.size());
    const int w = static_cast<int>(std::string(*rows.begin()).size());
    BinaryMask m(w, h);
    int r = 0;
    for (const char* row : rows) {
        for (int c = 0; c < w; ++c) {
            m.set(r, c, row[c] == '#');
        }
        ++r;
    }
    return m;
}

}  // namespace vdpost::testing
