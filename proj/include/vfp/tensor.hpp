#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace vfp {

// C x H x W float32 tensor, channel-major then row-major.
struct Tensor {
  std::uint32_t channels = 0;
  std::uint32_t height = 0;
  std::uint32_t width = 0;
  std::vector<float> data;

  Tensor() = default;
  Tensor(std::uint32_t c, std::uint32_t h, std::uint32_t w)
      : channels(c), height(h), width(w), data(std::size_t{c} * h * w, 0.0f) {}
  Tensor(std::uint32_t c, std::uint32_t h, std::uint32_t w, std::vector<float> values)
      : channels(c), height(h), width(w), data(std::move(values)) {}

  std::size_t size() const noexcept { return std::size_t{channels} * height * width; }

  float& at(std::uint32_t c, std::uint32_t y, std::uint32_t x) {
    return data[(std::size_t{c} * height + y) * width + x];
  }
  float at(std::uint32_t c, std::uint32_t y, std::uint32_t x) const {
    return data[(std::size_t{c} * height + y) * width + x];
  }

  bool operator==(const Tensor&) const = default;
};

}  // namespace vfp
