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

#include "forgeline/denoise.hpp"
#include "forgeline/volume.hpp"

namespace forgeline {

/// Extents along (frames, height, width).
struct Extent3 {
  std::size_t t = 1;
  std::size_t h = 1;
  std::size_t w = 1;

  bool operator==(const Extent3&) const = default;
};

struct TileWindow {
  Offset3 start;
  Extent3 extent;

  bool operator==(const TileWindow&) const = default;
};

struct TilePlan {
  Shape4 target;
  Extent3 tile;
  Extent3 overlap;
  std::vector<TileWindow> windows;

  /// Number of windows covering each (t, h, w) cell, flattened row-major.
  std::vector<std::uint32_t> coverage() const;
};

/// Desk-scale default tile and overlap.
inline constexpr Extent3 kDeskTile{9, 96, 96};
inline constexpr Extent3 kDeskOverlap{1, 24, 24};
/// Production patch size (129 frames at 768x768 pixels).
inline constexpr Extent3 kProductionTile{129, 768, 768};

/// Window starts along one axis. For length <= tile the single window is
/// the whole axis. Otherwise stride = tile - overlap and the last window is
/// clamped to end exactly at `length`. Throws InvalidOverlap if
/// overlap >= tile (or tile == 0).
std::vector<std::size_t> plan_axis(std::size_t length, std::size_t tile, std::size_t overlap);

/// Cartesian product of the per-axis plans, ordered t-major then h then w.
TilePlan make_plan(const Shape4& shape, Extent3 tile, Extent3 overlap);

/// Separable bilinear upsampling of height and width with corner-aligned
/// sampling (source index = dst * (n - 1) / (m - 1)). Frames are untouched.
LatentVolume upsample(const LatentVolume& low_res, std::size_t factor_h, std::size_t factor_w);

/// Order of the denoiser input: [noisy latent | upsampled low-res condition].
struct ConcatLayout {
  std::size_t noisy_channels = 0;
  std::size_t condition_channels = 0;

  std::size_t total() const noexcept { return noisy_channels + condition_channels; }
  LatentVolume stack(const LatentVolume& noisy, const LatentVolume& condition) const;
  LatentVolume noisy_part(const LatentVolume& stacked) const;
  LatentVolume condition_part(const LatentVolume& stacked) const;
};

struct TileParams {
  Extent3 tile = kDeskTile;
  Extent3 overlap = kDeskOverlap;
  /// Linear ramp weights across overlaps instead of a plain average.
  bool feather = false;
  /// Worker threads for per-tile sampling; 0 picks hardware concurrency.
  std::size_t threads = 1;
};

/// Weighted accumulation of tile results into the full volume:
/// out = sum(w * tile) / sum(w) per cell. `tiles[i]` covers
/// `plan.windows[i]`. With feather off every weight is 1.
LatentVolume blend_tiles(const TilePlan& plan, const std::vector<LatentVolume>& tiles, bool feather);

/// Tiled generative upscaling. The low-res latent is bilinearly upsampled
/// to the target size and used as a channel-concatenated condition; each
/// window is sampled independently with noise indexed by absolute cell
/// coordinates, and overlaps are averaged.
LatentVolume upscale_video(const LatentVolume& low_res, std::size_t scale, const Denoiser& denoiser,
                           const Schedule& schedule, const TileParams& params, std::uint64_t seed);

/// Toy super-resolution denoiser: its target is the condition half of the
/// [noisy | condition] input, so sampling reproduces the upsampled
/// low-res latent. Rejects inputs that are not exactly 2*C channels.
class ConditionEchoDenoiser final : public Denoiser {
 public:
  LatentVolume velocity(const LatentVolume& input, float t, const ConditionBundle& cond) const override;
};

}  // namespace forgeline
