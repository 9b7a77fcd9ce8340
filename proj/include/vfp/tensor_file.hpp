#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "vfp/tensor.hpp"

namespace vfp {

// On-disk layout, all integers and floats little-endian:
//
//   offset  size  field
//   0       4     magic "VFPT"
//   4       2     version (uint16) = 1
//   6       4     channels (uint32)
//   10      4     height (uint32)
//   14      4     width (uint32)
//   18      4*chw payload, IEEE-754 binary32, channel-major then row-major
inline constexpr char kTensorMagic[4] = {'V', 'F', 'P', 'T'};
inline constexpr std::uint16_t kTensorVersion = 1;
inline constexpr std::size_t kTensorHeaderBytes = 18;

std::vector<std::uint8_t> encode_tensor(const Tensor& t);

// Throws FormatError naming `source` on bad magic/version or a payload whose
// length does not match the header exactly.
Tensor decode_tensor(std::span<const std::uint8_t> bytes, const std::string& source = "<memory>");

// Values must be finite (InvalidArgument otherwise); IoError on write failure.
void write_tensor(const std::filesystem::path& path, const Tensor& t);
Tensor read_tensor(const std::filesystem::path& path);

}  // namespace vfp
