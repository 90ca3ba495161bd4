// Copyright 2026 The Forgeline Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "forgeline/container.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

#include "forgeline/error.hpp"

namespace forgeline {

namespace {

constexpr std::uint8_t kMagic[4] = {'F', 'G', 'L', 'V'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[at + i]) << (8 * i);
  return v;
}

std::uint32_t checked_dim(std::size_t d) {
  if (d > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::DimMismatch, "dimension " + std::to_string(d) + " does not fit in u32");
  }
  return static_cast<std::uint32_t>(d);
}

}  // namespace

std::vector<std::uint8_t> serialize_volume(const LatentVolume& volume) {
  std::vector<std::uint8_t> out;
  out.reserve(kVolumeHeaderBytes + 4 * volume.size());
  for (std::uint8_t b : kMagic) out.push_back(b);
  put_u32(out, kVolumeFormatVersion);
  put_u32(out, checked_dim(volume.channels()));
  put_u32(out, checked_dim(volume.frames()));
  put_u32(out, checked_dim(volume.height()));
  put_u32(out, checked_dim(volume.width()));
  for (float f : volume.data()) put_u32(out, std::bit_cast<std::uint32_t>(f));
  return out;
}

LatentVolume deserialize_volume(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    throw Error(ErrorCode::BadMagic, "missing FGLV magic");
  }
  if (bytes.size() < kVolumeHeaderBytes) {
    throw Error(ErrorCode::TruncatedPayload, "header needs 24 bytes, got " + std::to_string(bytes.size()));
  }
  const std::uint32_t version = get_u32(bytes, 4);
  if (version != kVolumeFormatVersion) {
    throw Error(ErrorCode::UnsupportedVersion, "version " + std::to_string(version));
  }
  const Shape4 shape{get_u32(bytes, 8), get_u32(bytes, 12), get_u32(bytes, 16), get_u32(bytes, 20)};

  const std::size_t payload = bytes.size() - kVolumeHeaderBytes;
  // Any product that overflows is necessarily longer than the payload.
  std::size_t expected = 4;
  bool overflow = false;
  for (std::size_t d : {shape.channels, shape.frames, shape.height, shape.width}) {
    overflow = overflow || __builtin_mul_overflow(expected, d, &expected);
  }
  if (overflow || expected > payload) {
    throw Error(ErrorCode::TruncatedPayload, "payload has " + std::to_string(payload) + " bytes, dims need more");
  }
  if (expected < payload) {
    throw Error(ErrorCode::DimMismatch, "payload has " + std::to_string(payload) + " bytes, dims need " +
                                            std::to_string(expected));
  }
  std::vector<float> data(shape.count());
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i] = std::bit_cast<float>(get_u32(bytes, kVolumeHeaderBytes + 4 * i));
  }
  return LatentVolume(shape, std::move(data));
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::IoError, "read failed: " + path.string());
  return bytes;
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

void save_volume(const LatentVolume& volume, const std::filesystem::path& path) {
  write_file_bytes(path, serialize_volume(volume));
}

LatentVolume load_volume(const std::filesystem::path& path) {
  return deserialize_volume(read_file_bytes(path));
}

}  // namespace forgeline
