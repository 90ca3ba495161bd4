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

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "forgeline/curation.hpp"
#include "forgeline/volume.hpp"

namespace forgeline {

/// Integer BT.601 luma in 0..255.
std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept;
std::vector<std::uint8_t> luma_plane(const Rgba8Image& frame);

struct SceneParams {
  double cut_threshold = 0.3;
  std::size_t min_len = 5;
  std::size_t bins = 32;
};

/// Chi-square distance between per-channel (R, G, B) normalized intensity
/// histograms, 0.5 * sum (p - q)^2 / (p + q), averaged over channels so the
/// result lies in [0, 1].
double histogram_distance(const Rgba8Image& a, const Rgba8Image& b, std::size_t bins = 32);

/// Hard-cut detection: a clip starts wherever the distance to the previous
/// frame exceeds the threshold. Clips shorter than min_len merge into the
/// following clip (the tail merges backward). The result partitions
/// [0, N). Throws TooShort for fewer than two frames.
std::vector<ClipBounds> split_scenes(std::span<const Rgba8Image> frames, const SceneParams& params = {});

struct FlowParams {
  std::size_t block = 16;
  int radius = 4;
};

struct MotionVector {
  int dx = 0;
  int dy = 0;
  bool operator==(const MotionVector&) const = default;
};

/// Block displacement (dx, dy) such that next(x, y) best matches
/// prev(x - dx, y - dy) by luma SAD. Ties go to the smaller |dx| + |dy|,
/// then to scan order (dy, then dx, ascending).
struct BlockMotion {
  std::size_t x0 = 0;
  std::size_t y0 = 0;
  MotionVector v;
};

/// Blocks are laid on a grid starting at (radius, radius); only blocks whose
/// whole search window lies inside the frame take part, so no candidate is
/// ever clipped by the border. Row-major order.
using BlockFlow = std::vector<BlockMotion>;

BlockFlow block_match(const Rgba8Image& prev, const Rgba8Image& next, const FlowParams& params = {});

/// Mean block flow magnitude for each consecutive frame pair (N - 1 values).
std::vector<double> mean_flow_series(std::span<const Rgba8Image> frames, const FlowParams& params = {});

/// Splits where the mean flow magnitude jumps by more than `threshold`
/// between consecutive pairs; a jump between pairs (i, i+1) and (i+1, i+2)
/// starts a new range at frame i + 1. Throws TooShort below three frames.
std::vector<ClipBounds> motion_split(std::span<const Rgba8Image> frames, double threshold = 1.0,
                                     const FlowParams& params = {});

/// 1 - (fraction of pixels in the two darkest and two brightest of 32 luma
/// bins), averaged over frames. Returns 0 for an empty clip.
double luminance_quality(std::span<const Rgba8Image> frames);

/// Shannon entropy in bits of the 8-bin direction histogram of all non-zero
/// block motion vectors, divided by the clip duration N / fps seconds.
/// Throws TooShort below two frames.
double motion_richness(std::span<const Rgba8Image> frames, double fps = 24.0, const FlowParams& params = {});

/// Direction bin (0..7) of a vector, bins centered on the axes.
std::size_t direction_bin(const MotionVector& v) noexcept;

}  // namespace forgeline
