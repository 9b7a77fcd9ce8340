#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "vfp/matrix.hpp"

namespace vfp {

// Preview quantization: floor(255 * v + 0.5), so 0.5 maps to 128.
std::uint8_t to_gray8(double v) noexcept;

// Writes an 8-bit grayscale, non-interlaced PNG. Values must lie in [0, 1]
// (InvalidArgument otherwise); IoError when libpng cannot write the file.
void write_png(const std::filesystem::path& path, const Matrix<double>& img);

// Reads back an 8-bit grayscale PNG; used by tests and inspection.
Matrix<std::uint8_t> read_png_gray(const std::filesystem::path& path);

}  // namespace vfp
