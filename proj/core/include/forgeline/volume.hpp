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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace forgeline {

/// Extents of a (channels, frames, height, width) grid.
struct Shape4 {
  std::size_t channels = 0;
  std::size_t frames = 0;
  std::size_t height = 0;
  std::size_t width = 0;

  std::size_t count() const noexcept { return channels * frames * height * width; }
  bool operator==(const Shape4&) const = default;
};

/// Offset of a window inside a larger volume, along (frames, height, width).
struct Offset3 {
  std::size_t t = 0;
  std::size_t h = 0;
  std::size_t w = 0;

  bool operator==(const Offset3&) const = default;
};

/// Dense 4-D float grid indexed (c, t, h, w), row-major. Images are volumes
/// with one frame; videos and latents use the same container.
///
/// Entries are always finite. Construction from external data checks this;
/// the mutable accessors are for code that owns a freshly built volume.
class LatentVolume {
 public:
  LatentVolume() = default;
  explicit LatentVolume(Shape4 shape, float fill = 0.0f);
  /// Throws DimMismatch on a length mismatch and NonFinite on NaN/Inf.
  LatentVolume(Shape4 shape, std::vector<float> data);

  const Shape4& shape() const noexcept { return shape_; }
  std::size_t channels() const noexcept { return shape_.channels; }
  std::size_t frames() const noexcept { return shape_.frames; }
  std::size_t height() const noexcept { return shape_.height; }
  std::size_t width() const noexcept { return shape_.width; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  std::size_t index(std::size_t c, std::size_t t, std::size_t h, std::size_t w) const noexcept {
    return ((c * shape_.frames + t) * shape_.height + h) * shape_.width + w;
  }

  float at(std::size_t c, std::size_t t, std::size_t h, std::size_t w) const noexcept {
    return data_[index(c, t, h, w)];
  }
  float& at(std::size_t c, std::size_t t, std::size_t h, std::size_t w) noexcept {
    return data_[index(c, t, h, w)];
  }

  std::span<const float> data() const noexcept { return data_; }
  std::span<float> data() noexcept { return data_; }

  /// Throws NonFinite if any entry is NaN or infinite.
  void check_finite() const;

  /// Copies the (t, h, w) window starting at `origin` with extents
  /// `extent` (channels are ignored in `extent`; all channels are copied).
  LatentVolume crop(Offset3 origin, Shape4 extent) const;

  /// Copies frames [first, first + count).
  LatentVolume frames_slice(std::size_t first, std::size_t count) const;

  bool operator==(const LatentVolume& other) const = default;

 private:
  Shape4 shape_{};
  std::vector<float> data_;
};

/// Concatenates along the frame axis; channel/height/width must agree.
LatentVolume concat_frames(const LatentVolume& a, const LatentVolume& b);

/// Concatenates along the channel axis; frames/height/width must agree.
LatentVolume concat_channels(const LatentVolume& a, const LatentVolume& b);

/// Largest absolute elementwise difference. Shapes must agree.
double max_abs_diff(const LatentVolume& a, const LatentVolume& b);

/// True when both volumes have equal shape and bit-identical payloads.
bool bit_equal(const LatentVolume& a, const LatentVolume& b) noexcept;

/// 0/1 mask over (frames, height, width). Applies to every channel.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(std::size_t frames, std::size_t height, std::size_t width, std::uint8_t fill = 0);

  std::size_t frames() const noexcept { return frames_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return bits_.size(); }

  std::size_t index(std::size_t t, std::size_t h, std::size_t w) const noexcept {
    return (t * height_ + h) * width_ + w;
  }
  bool test(std::size_t t, std::size_t h, std::size_t w) const noexcept {
    return bits_[index(t, h, w)] != 0;
  }
  void set(std::size_t t, std::size_t h, std::size_t w, bool on) noexcept {
    bits_[index(t, h, w)] = on ? 1 : 0;
  }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  std::size_t count_ones() const noexcept;
  /// Cellwise 1 - bit.
  BinaryMask inverted() const;
  /// Cellwise OR; shapes must agree.
  BinaryMask united(const BinaryMask& other) const;

  bool matches(const Shape4& shape) const noexcept {
    return frames_ == shape.frames && height_ == shape.height && width_ == shape.width;
  }

  bool operator==(const BinaryMask&) const = default;

 private:
  std::size_t frames_ = 0;
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// 8-bit RGBA image, row-major, 4 bytes per pixel.
class Rgba8Image {
 public:
  Rgba8Image() = default;
  Rgba8Image(std::size_t height, std::size_t width);
  Rgba8Image(std::size_t height, std::size_t width, std::vector<std::uint8_t> pixels);

  std::size_t height() const noexcept { return height_; }
  std::size_t width() const noexcept { return width_; }
  bool empty() const noexcept { return height_ == 0 || width_ == 0; }

  std::uint8_t at(std::size_t y, std::size_t x, std::size_t ch) const noexcept {
    return pixels_[(y * width_ + x) * 4 + ch];
  }
  std::uint8_t& at(std::size_t y, std::size_t x, std::size_t ch) noexcept {
    return pixels_[(y * width_ + x) * 4 + ch];
  }
  void set_pixel(std::size_t y, std::size_t x, std::uint8_t r, std::uint8_t g, std::uint8_t b,
                 std::uint8_t a = 255) noexcept;

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() noexcept { return pixels_; }

  bool operator==(const Rgba8Image&) const = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::vector<std::uint8_t> pixels_;
};

}  // namespace forgeline
