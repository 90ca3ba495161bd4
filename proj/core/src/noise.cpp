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

#include "forgeline/noise.hpp"

#include <cmath>
#include <numbers>

namespace forgeline {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t tag) noexcept {
  return splitmix64(seed ^ splitmix64(tag + 0xD1B54A32D192ED03ull));
}

float SeededNoise::normal(std::uint64_t c, std::uint64_t t, std::uint64_t h, std::uint64_t w) const noexcept {
  std::uint64_t key = splitmix64(seed_);
  key = splitmix64(key ^ c);
  key = splitmix64(key ^ t);
  key = splitmix64(key ^ h);
  key = splitmix64(key ^ w);
  const std::uint64_t second = splitmix64(key ^ 0xA0761D6478BD642Full);
  // 53-bit uniforms; u1 in (0, 1] keeps the log finite.
  const double u1 = (static_cast<double>(key >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(second >> 11) * 0x1.0p-53;
  return static_cast<float>(std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2));
}

LatentVolume SeededNoise::volume(const Shape4& shape, Offset3 origin) const {
  LatentVolume out(shape);
  for (std::size_t c = 0; c < shape.channels; ++c) {
    for (std::size_t t = 0; t < shape.frames; ++t) {
      for (std::size_t h = 0; h < shape.height; ++h) {
        for (std::size_t w = 0; w < shape.width; ++w) {
          out.at(c, t, h, w) = normal(c, origin.t + t, origin.h + h, origin.w + w);
        }
      }
    }
  }
  return out;
}

}  // namespace forgeline
