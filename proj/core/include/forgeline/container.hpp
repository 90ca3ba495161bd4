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

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "forgeline/volume.hpp"

namespace forgeline {

// FGLV container layout (all integers and floats little-endian):
//
//   offset  size  field
//   0       4     magic "FGLV"
//   4       4     version (u32) = 1
//   8       16    dims c, t, h, w (u32 each)
//   24      4*n   payload, n = c*t*h*w f32 values in (c, t, h, w) order
inline constexpr std::uint32_t kVolumeFormatVersion = 1;
inline constexpr std::size_t kVolumeHeaderBytes = 24;

std::vector<std::uint8_t> serialize_volume(const LatentVolume& volume);

/// Throws BadMagic, UnsupportedVersion, TruncatedPayload (too few bytes) or
/// DimMismatch (trailing bytes or dims that overflow).
LatentVolume deserialize_volume(std::span<const std::uint8_t> bytes);

/// Throws IoError when the file cannot be written.
void save_volume(const LatentVolume& volume, const std::filesystem::path& path);
LatentVolume load_volume(const std::filesystem::path& path);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace forgeline
