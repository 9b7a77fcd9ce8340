#include "vfp/tensor_file.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "vfp/error.hpp"

namespace vfp {

namespace {

template <typename U>
void put_le(std::vector<std::uint8_t>& out, U value) {
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
  }
}

template <typename U>
U get_le(std::span<const std::uint8_t> bytes, std::size_t offset) {
  U value = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    value |= static_cast<U>(static_cast<U>(bytes[offset + i]) << (8 * i));
  }
  return value;
}

}  // namespace

std::vector<std::uint8_t> encode_tensor(const Tensor& t) {
  if (t.data.size() != t.size()) {
    throw Error(ErrorCode::InvalidArgument, "tensor data length does not match its shape");
  }
  std::vector<std::uint8_t> out;
  out.reserve(kTensorHeaderBytes + 4 * t.size());
  out.insert(out.end(), std::begin(kTensorMagic), std::end(kTensorMagic));
  put_le<std::uint16_t>(out, kTensorVersion);
  put_le<std::uint32_t>(out, t.channels);
  put_le<std::uint32_t>(out, t.height);
  put_le<std::uint32_t>(out, t.width);
  for (float v : t.data) put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(v));
  return out;
}

Tensor decode_tensor(std::span<const std::uint8_t> bytes, const std::string& source) {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::FormatError, source + ": " + why);
  };
  if (bytes.size() < kTensorHeaderBytes) fail("truncated header");
  if (std::memcmp(bytes.data(), kTensorMagic, 4) != 0) fail("bad magic, expected VFPT");
  const auto version = get_le<std::uint16_t>(bytes, 4);
  if (version != kTensorVersion) fail("unsupported version " + std::to_string(version));

  Tensor t;
  t.channels = get_le<std::uint32_t>(bytes, 6);
  t.height = get_le<std::uint32_t>(bytes, 10);
  t.width = get_le<std::uint32_t>(bytes, 14);
  const std::uint64_t expected = kTensorHeaderBytes + 4ULL * t.channels * t.height * t.width;
  if (bytes.size() != expected) {
    fail("payload is " + std::to_string(bytes.size() - kTensorHeaderBytes) + " bytes, header implies " +
         std::to_string(expected - kTensorHeaderBytes));
  }
  t.data.resize(t.size());
  for (std::size_t i = 0; i < t.data.size(); ++i) {
    t.data[i] = std::bit_cast<float>(get_le<std::uint32_t>(bytes, kTensorHeaderBytes + 4 * i));
  }
  return t;
}

void write_tensor(const std::filesystem::path& path, const Tensor& t) {
  for (float v : t.data) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument, "write_tensor: non-finite value for " + path.string());
    }
  }
  const auto bytes = encode_tensor(t);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
}

Tensor read_tensor(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  return decode_tensor(bytes, path.string());
}

}  // namespace vfp
