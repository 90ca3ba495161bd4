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

#include "forgeline/codec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "forgeline/error.hpp"

namespace forgeline {

std::uint8_t quantize_unit(float value) noexcept {
  const float clamped = std::clamp(value, 0.0f, 1.0f);
  return static_cast<std::uint8_t>(std::lround(clamped * 255.0f));
}

LatentVolume encode(const Rgba8Image& image) {
  return encode_frames({image});
}

LatentVolume encode_frames(const std::vector<Rgba8Image>& frames) {
  if (frames.empty()) throw Error(ErrorCode::WrongShape, "no frames to encode");
  const std::size_t h = frames.front().height();
  const std::size_t w = frames.front().width();
  LatentVolume out(Shape4{4, frames.size(), h, w});
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const Rgba8Image& img = frames[t];
    if (img.height() != h || img.width() != w) {
      throw Error(ErrorCode::WrongShape, "frame " + std::to_string(t) + " size differs from frame 0");
    }
    for (std::size_t y = 0; y < h; ++y) {
      for (std::size_t x = 0; x < w; ++x) {
        for (std::size_t c = 0; c < 4; ++c) {
          out.at(c, t, y, x) = static_cast<float>(img.at(y, x, c)) / 255.0f;
        }
      }
    }
  }
  return out;
}

Rgba8Image decode_frame(const LatentVolume& volume, std::size_t frame) {
  if (volume.channels() != 4) {
    throw Error(ErrorCode::WrongShape, "decode needs 4 channels, got " + std::to_string(volume.channels()));
  }
  if (frame >= volume.frames()) {
    throw Error(ErrorCode::WrongShape, "frame " + std::to_string(frame) + " out of range");
  }
  Rgba8Image img(volume.height(), volume.width());
  for (std::size_t y = 0; y < volume.height(); ++y) {
    for (std::size_t x = 0; x < volume.width(); ++x) {
      for (std::size_t c = 0; c < 4; ++c) img.at(y, x, c) = quantize_unit(volume.at(c, frame, y, x));
    }
  }
  return img;
}

Rgba8Image decode(const LatentVolume& volume) {
  if (volume.frames() != 1) {
    throw Error(ErrorCode::WrongShape, "decode needs 1 frame, got " + std::to_string(volume.frames()));
  }
  return decode_frame(volume, 0);
}

}  // namespace forgeline
