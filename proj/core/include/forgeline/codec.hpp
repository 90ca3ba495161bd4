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
#include <vector>

#include "forgeline/volume.hpp"

namespace forgeline {

/// Identity pixel<->latent codec. Each byte b becomes b / 255 in a
/// (4, 1, H, W) volume; decode rounds clamp(r, 0, 1) * 255 back to a byte,
/// so decode(encode(img)) == img bit-exactly.
LatentVolume encode(const Rgba8Image& image);

/// Throws WrongShape unless channels == 4 and frames == 1.
Rgba8Image decode(const LatentVolume& volume);

/// Decodes one frame of a 4-channel video volume.
Rgba8Image decode_frame(const LatentVolume& volume, std::size_t frame);

/// Encodes a list of equally sized frames as a (4, T, H, W) volume.
LatentVolume encode_frames(const std::vector<Rgba8Image>& frames);

std::uint8_t quantize_unit(float value) noexcept;

}  // namespace forgeline
