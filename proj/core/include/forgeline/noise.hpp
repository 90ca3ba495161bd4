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

#include "forgeline/volume.hpp"

namespace forgeline {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Derives an independent seed for a named sub-stream.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t tag) noexcept;

/// Counter-based standard-normal source. The value for a cell depends only
/// on (seed, c, t, h, w), never on evaluation order, so a tile sampled on
/// its own sees exactly the noise the untiled volume has at those cells.
class SeededNoise {
 public:
  explicit SeededNoise(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  float normal(std::uint64_t c, std::uint64_t t, std::uint64_t h, std::uint64_t w) const noexcept;

  /// Fills a volume of `shape` whose cell (c, t, h, w) sits at absolute
  /// coordinates (c, origin.t + t, origin.h + h, origin.w + w).
  LatentVolume volume(const Shape4& shape, Offset3 origin = {}) const;

 private:
  std::uint64_t seed_;
};

}  // namespace forgeline
