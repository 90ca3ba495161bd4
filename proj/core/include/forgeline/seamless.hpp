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
#include <optional>
#include <string_view>

#include "forgeline/denoise.hpp"
#include "forgeline/volume.hpp"

namespace forgeline {

enum class SeamDirection { Horizontal, Vertical, Both };

enum class SpatialAxis { Height, Width };

std::optional<SeamDirection> parse_seam_direction(std::string_view text);

/// Horizontal repairs the left/right wrap (band over columns); Vertical the
/// top/bottom wrap (band over rows).
struct SeamSpec {
  SeamDirection direction = SeamDirection::Horizontal;
  std::size_t band_width = 16;

  /// Throws InvalidBand (odd or < 2), OddDimension or BandTooWide.
  void validate(std::size_t height, std::size_t width) const;
};

/// Rotates the axis by half its length: out[i] = in[(i + D/2) mod D].
/// Throws OddDimension for odd D. Applying it twice is the identity.
LatentVolume swap_halves(const LatentVolume& volume, SpatialAxis axis);

/// Single-frame mask with the centered band(s) set: columns
/// [w/2 - band/2, w/2 + band/2) for Horizontal, rows likewise for Vertical,
/// and the union of both for Both.
BinaryMask band_mask(std::size_t height, std::size_t width, const SeamSpec& spec);

/// The band of `band_mask` mapped back through the half swap, i.e. the cells
/// make_seamless may change. Everything else is preserved bit-exactly.
BinaryMask seam_region(std::size_t height, std::size_t width, const SeamSpec& spec);

/// Latent-space pipeline: swap halves, inpaint the centered band, swap back.
/// Both runs the horizontal pass first, then the vertical pass on its output.
LatentVolume make_seamless_latent(const LatentVolume& latent, const SeamSpec& spec, const Denoiser& denoiser,
                                  const Schedule& schedule, std::uint64_t seed);

/// encode -> make_seamless_latent -> decode.
Rgba8Image make_seamless(const Rgba8Image& image, const SeamSpec& spec, const Denoiser& denoiser,
                         const Schedule& schedule, std::uint64_t seed);

}  // namespace forgeline
