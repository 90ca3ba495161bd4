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

#include "forgeline/volume.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "forgeline/error.hpp"

namespace forgeline {

namespace {

std::string shape_str(const Shape4& s) {
  return std::to_string(s.channels) + "x" + std::to_string(s.frames) + "x" + std::to_string(s.height) +
         "x" + std::to_string(s.width);
}

}  // namespace

LatentVolume::LatentVolume(Shape4 shape, float fill) : shape_(shape), data_(shape.count(), fill) {
  if (!std::isfinite(fill)) throw Error(ErrorCode::NonFinite, "fill value is not finite");
}

LatentVolume::LatentVolume(Shape4 shape, std::vector<float> data) : shape_(shape), data_(std::move(data)) {
  if (data_.size() != shape_.count()) {
    throw Error(ErrorCode::DimMismatch, "payload has " + std::to_string(data_.size()) +
                                            " values, shape " + shape_str(shape_) + " needs " +
                                            std::to_string(shape_.count()));
  }
  check_finite();
}

void LatentVolume::check_finite() const {
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw Error(ErrorCode::NonFinite, "entry " + std::to_string(i) + " is not finite");
    }
  }
}

LatentVolume LatentVolume::crop(Offset3 origin, Shape4 extent) const {
  if (origin.t + extent.frames > shape_.frames || origin.h + extent.height > shape_.height ||
      origin.w + extent.width > shape_.width) {
    throw Error(ErrorCode::ShapeMismatch, "crop window exceeds volume " + shape_str(shape_));
  }
  LatentVolume out(Shape4{shape_.channels, extent.frames, extent.height, extent.width});
  for (std::size_t c = 0; c < shape_.channels; ++c) {
    for (std::size_t t = 0; t < extent.frames; ++t) {
      for (std::size_t h = 0; h < extent.height; ++h) {
        const float* src = &data_[index(c, origin.t + t, origin.h + h, origin.w)];
        std::copy_n(src, extent.width, &out.at(c, t, h, 0));
      }
    }
  }
  return out;
}

LatentVolume LatentVolume::frames_slice(std::size_t first, std::size_t count) const {
  return crop(Offset3{first, 0, 0}, Shape4{shape_.channels, count, shape_.height, shape_.width});
}

LatentVolume concat_frames(const LatentVolume& a, const LatentVolume& b) {
  if (a.channels() != b.channels() || a.height() != b.height() || a.width() != b.width()) {
    throw Error(ErrorCode::ShapeMismatch, "frame concat needs matching c/h/w: " + shape_str(a.shape()) +
                                              " vs " + shape_str(b.shape()));
  }
  LatentVolume out(Shape4{a.channels(), a.frames() + b.frames(), a.height(), a.width()});
  const std::size_t plane = a.height() * a.width();
  for (std::size_t c = 0; c < a.channels(); ++c) {
    std::copy_n(&a.data()[a.index(c, 0, 0, 0)], a.frames() * plane, &out.at(c, 0, 0, 0));
    std::copy_n(&b.data()[b.index(c, 0, 0, 0)], b.frames() * plane, &out.at(c, a.frames(), 0, 0));
  }
  return out;
}

LatentVolume concat_channels(const LatentVolume& a, const LatentVolume& b) {
  if (a.frames() != b.frames() || a.height() != b.height() || a.width() != b.width()) {
    throw Error(ErrorCode::ShapeMismatch, "channel concat needs matching t/h/w: " + shape_str(a.shape()) +
                                              " vs " + shape_str(b.shape()));
  }
  std::vector<float> data;
  data.reserve(a.size() + b.size());
  data.insert(data.end(), a.data().begin(), a.data().end());
  data.insert(data.end(), b.data().begin(), b.data().end());
  return LatentVolume(Shape4{a.channels() + b.channels(), a.frames(), a.height(), a.width()},
                      std::move(data));
}

double max_abs_diff(const LatentVolume& a, const LatentVolume& b) {
  if (a.shape() != b.shape()) {
    throw Error(ErrorCode::ShapeMismatch, shape_str(a.shape()) + " vs " + shape_str(b.shape()));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(static_cast<double>(a.data()[i]) - static_cast<double>(b.data()[i])));
  }
  return worst;
}

bool bit_equal(const LatentVolume& a, const LatentVolume& b) noexcept {
  return a.shape() == b.shape() &&
         std::memcmp(a.data().data(), b.data().data(), a.size() * sizeof(float)) == 0;
}

BinaryMask::BinaryMask(std::size_t frames, std::size_t height, std::size_t width, std::uint8_t fill)
    : frames_(frames), height_(height), width_(width), bits_(frames * height * width, fill ? 1 : 0) {}

std::size_t BinaryMask::count_ones() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

BinaryMask BinaryMask::inverted() const {
  BinaryMask out = *this;
  for (auto& b : out.bits_) b = b ? 0 : 1;
  return out;
}

BinaryMask BinaryMask::united(const BinaryMask& other) const {
  if (frames_ != other.frames_ || height_ != other.height_ || width_ != other.width_) {
    throw Error(ErrorCode::ShapeMismatch, "mask union needs equal shapes");
  }
  BinaryMask out = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = (bits_[i] | other.bits_[i]) ? 1 : 0;
  return out;
}

Rgba8Image::Rgba8Image(std::size_t height, std::size_t width)
    : height_(height), width_(width), pixels_(height * width * 4, 0) {}

Rgba8Image::Rgba8Image(std::size_t height, std::size_t width, std::vector<std::uint8_t> pixels)
    : height_(height), width_(width), pixels_(std::move(pixels)) {
  if (pixels_.size() != height_ * width_ * 4) {
    throw Error(ErrorCode::DimMismatch, "RGBA buffer has " + std::to_string(pixels_.size()) + " bytes, expected " +
                                            std::to_string(height_ * width_ * 4));
  }
}

void Rgba8Image::set_pixel(std::size_t y, std::size_t x, std::uint8_t r, std::uint8_t g, std::uint8_t b,
                           std::uint8_t a) noexcept {
  std::uint8_t* p = &pixels_[(y * width_ + x) * 4];
  p[0] = r;
  p[1] = g;
  p[2] = b;
  p[3] = a;
}

}  // namespace forgeline
