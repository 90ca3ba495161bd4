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

#include "forgeline/seamless.hpp"

#include <string>

#include "forgeline/codec.hpp"
#include "forgeline/error.hpp"
#include "forgeline/noise.hpp"

namespace forgeline {

namespace {

constexpr std::uint64_t kVerticalPassTag = 0x56455254ull;

bool has_horizontal(SeamDirection d) { return d != SeamDirection::Vertical; }
bool has_vertical(SeamDirection d) { return d != SeamDirection::Horizontal; }

void check_axis(std::size_t length, std::size_t band, const char* name) {
  if (length % 2 != 0) {
    throw Error(ErrorCode::OddDimension, std::string(name) + " " + std::to_string(length) + " is odd");
  }
  if (band >= length) {
    throw Error(ErrorCode::BandTooWide, "band " + std::to_string(band) + " >= " + name + " " +
                                            std::to_string(length));
  }
}

BinaryMask single_band(std::size_t height, std::size_t width, std::size_t band, SpatialAxis axis) {
  BinaryMask mask(1, height, width);
  const std::size_t length = axis == SpatialAxis::Width ? width : height;
  const std::size_t lo = length / 2 - band / 2;
  const std::size_t hi = length / 2 + band / 2;
  for (std::size_t h = 0; h < height; ++h) {
    for (std::size_t w = 0; w < width; ++w) {
      const std::size_t i = axis == SpatialAxis::Width ? w : h;
      if (i >= lo && i < hi) mask.set(0, h, w, true);
    }
  }
  return mask;
}

LatentVolume seamless_pass(const LatentVolume& latent, std::size_t band, SpatialAxis axis,
                           const Denoiser& denoiser, const Schedule& schedule, std::uint64_t seed) {
  const LatentVolume swapped = swap_halves(latent, axis);
  BinaryMask mask = single_band(latent.height(), latent.width(), band, axis);
  if (latent.frames() != 1) {
    BinaryMask stacked(latent.frames(), latent.height(), latent.width());
    for (std::size_t t = 0; t < latent.frames(); ++t)
      for (std::size_t h = 0; h < latent.height(); ++h)
        for (std::size_t w = 0; w < latent.width(); ++w) stacked.set(t, h, w, mask.test(0, h, w));
    mask = std::move(stacked);
  }
  const LatentVolume filled = sample_inpaint(denoiser, schedule, swapped, mask, seed);
  return swap_halves(filled, axis);
}

}  // namespace

std::optional<SeamDirection> parse_seam_direction(std::string_view text) {
  if (text == "horizontal" || text == "Horizontal" || text == "h") return SeamDirection::Horizontal;
  if (text == "vertical" || text == "Vertical" || text == "v") return SeamDirection::Vertical;
  if (text == "both" || text == "Both" || text == "hv") return SeamDirection::Both;
  return std::nullopt;
}

void SeamSpec::validate(std::size_t height, std::size_t width) const {
  if (band_width < 2 || band_width % 2 != 0) {
    throw Error(ErrorCode::InvalidBand, "band width must be even and >= 2, got " + std::to_string(band_width));
  }
  if (has_horizontal(direction)) check_axis(width, band_width, "width");
  if (has_vertical(direction)) check_axis(height, band_width, "height");
}

LatentVolume swap_halves(const LatentVolume& volume, SpatialAxis axis) {
  const std::size_t length = axis == SpatialAxis::Width ? volume.width() : volume.height();
  if (length % 2 != 0) {
    throw Error(ErrorCode::OddDimension, "cannot split an odd axis of length " + std::to_string(length));
  }
  const std::size_t half = length / 2;
  LatentVolume out(volume.shape());
  for (std::size_t c = 0; c < volume.channels(); ++c) {
    for (std::size_t t = 0; t < volume.frames(); ++t) {
      for (std::size_t h = 0; h < volume.height(); ++h) {
        for (std::size_t w = 0; w < volume.width(); ++w) {
          if (axis == SpatialAxis::Width) {
            out.at(c, t, h, w) = volume.at(c, t, h, (w + half) % length);
          } else {
            out.at(c, t, h, w) = volume.at(c, t, (h + half) % length, w);
          }
        }
      }
    }
  }
  return out;
}

BinaryMask band_mask(std::size_t height, std::size_t width, const SeamSpec& spec) {
  spec.validate(height, width);
  switch (spec.direction) {
    case SeamDirection::Horizontal: return single_band(height, width, spec.band_width, SpatialAxis::Width);
    case SeamDirection::Vertical: return single_band(height, width, spec.band_width, SpatialAxis::Height);
    case SeamDirection::Both:
      return single_band(height, width, spec.band_width, SpatialAxis::Width)
          .united(single_band(height, width, spec.band_width, SpatialAxis::Height));
  }
  return BinaryMask(1, height, width);
}

BinaryMask seam_region(std::size_t height, std::size_t width, const SeamSpec& spec) {
  spec.validate(height, width);
  BinaryMask region(1, height, width);
  const std::size_t half_band = spec.band_width / 2;
  for (std::size_t h = 0; h < height; ++h) {
    for (std::size_t w = 0; w < width; ++w) {
      const bool col = has_horizontal(spec.direction) && (w < half_band || w >= width - half_band);
      const bool row = has_vertical(spec.direction) && (h < half_band || h >= height - half_band);
      region.set(0, h, w, col || row);
    }
  }
  return region;
}

LatentVolume make_seamless_latent(const LatentVolume& latent, const SeamSpec& spec, const Denoiser& denoiser,
                                  const Schedule& schedule, std::uint64_t seed) {
  spec.validate(latent.height(), latent.width());
  LatentVolume out = latent;
  if (has_horizontal(spec.direction)) {
    out = seamless_pass(out, spec.band_width, SpatialAxis::Width, denoiser, schedule, seed);
  }
  if (has_vertical(spec.direction)) {
    out = seamless_pass(out, spec.band_width, SpatialAxis::Height, denoiser, schedule,
                        sub_seed(seed, kVerticalPassTag));
  }
  return out;
}

Rgba8Image make_seamless(const Rgba8Image& image, const SeamSpec& spec, const Denoiser& denoiser,
                         const Schedule& schedule, std::uint64_t seed) {
  return decode(make_seamless_latent(encode(image), spec, denoiser, schedule, seed));
}

}  // namespace forgeline
