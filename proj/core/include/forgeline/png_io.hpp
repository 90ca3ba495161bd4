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

// PNG I/O through libpng's simplified API. Any input PNG is converted to
// 8-bit RGBA; output is always 8-bit RGBA with default compression, so the
// same image always produces the same bytes.

std::vector<std::uint8_t> encode_png(const Rgba8Image& image);
Rgba8Image decode_png(std::span<const std::uint8_t> bytes);

Rgba8Image read_png(const std::filesystem::path& path);
void write_png(const Rgba8Image& image, const std::filesystem::path& path);

}  // namespace forgeline
