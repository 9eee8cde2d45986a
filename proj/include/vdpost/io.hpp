#pragma once

#include <filesystem>
#include <vector>

#include "vdpost/image.hpp"

namespace vdpost {

/// Reads a PGM (P2 or P5, any maxval up to 65535) or an 8-bit grayscale PNG
/// without rescaling. Throws IoError with a kind naming what went wrong.
RawImage load_raw(const std::filesystem::path& path);

/// load_raw followed by per-frame min-max normalization.
SaliencyImage load_frame(const std::filesystem::path& path);

/// Writes a P5 PGM, maxval 255, background 0 and foreground 255.
void save_mask(const BinaryMask& mask, const std::filesystem::path& path);

/// Reads a PGM written by save_mask (any nonzero sample is foreground).
BinaryMask load_mask(const std::filesystem::path& path);

/// Writes a saliency image as P5 PGM, maxval 255, rounding v * 255.
void save_frame(const SaliencyImage& img, const std::filesystem::path& path);

/// Regular files in dir whose extension matches one of exts, sorted by filename.
std::vector<std::filesystem::path> list_files(const std::filesystem::path& dir,
                                              std::initializer_list<const char*> exts);

}  // namespace vdpost
