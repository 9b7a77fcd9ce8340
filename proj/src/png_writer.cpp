#include "vfp/png_writer.hpp"

#include <png.h>

#include <cmath>
#include <cstring>
#include <string>

#include "vfp/error.hpp"

namespace vfp {

std::uint8_t to_gray8(double v) noexcept {
  return static_cast<std::uint8_t>(std::floor(255.0 * v + 0.5));
}

void write_png(const std::filesystem::path& path, const Matrix<double>& img) {
  if (img.rows() == 0 || img.cols() == 0) {
    throw Error(ErrorCode::InvalidArgument, "write_png: empty image");
  }
  std::vector<std::uint8_t> pixels;
  pixels.reserve(img.rows() * img.cols());
  for (double v : img.data()) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument,
                  "write_png: value " + std::to_string(v) + " outside [0, 1] for " + path.string());
    }
    pixels.push_back(to_gray8(v));
  }

  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.cols());
  image.height = static_cast<png_uint_32>(img.rows());
  image.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.c_str(), 0, pixels.data(), 0, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::IoError, "write_png: " + path.string() + ": " + message);
  }
}

Matrix<std::uint8_t> read_png_gray(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw Error(ErrorCode::IoError, "read_png: " + path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::IoError, "read_png: " + path.string() + ": " + message);
  }
  Matrix<std::uint8_t> out(image.height, image.width);
  for (std::size_t r = 0; r < out.rows(); ++r) {
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) = pixels[r * out.cols() + c];
  }
  return out;
}

}  // namespace vfp
