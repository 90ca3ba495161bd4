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

#include "forgeline/png_io.hpp"

#include <png.h>

#include <cstring>
#include <string>

#include "forgeline/container.hpp"
#include "forgeline/error.hpp"

namespace forgeline {

namespace {

struct ImageGuard {
  png_image image;
  ImageGuard() {
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
  }
  ~ImageGuard() { png_image_free(&image); }
  ImageGuard(const ImageGuard&) = delete;
  ImageGuard& operator=(const ImageGuard&) = delete;
};

}  // namespace

std::vector<std::uint8_t> encode_png(const Rgba8Image& image) {
  if (image.empty()) throw Error(ErrorCode::EmptyImage, "cannot write a zero-size PNG");
  ImageGuard guard;
  guard.image.width = static_cast<png_uint_32>(image.width());
  guard.image.height = static_cast<png_uint_32>(image.height());
  guard.image.format = PNG_FORMAT_RGBA;

  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&guard.image, nullptr, &size, 0, image.pixels().data(), 0, nullptr)) {
    throw Error(ErrorCode::IoError, std::string("PNG sizing failed: ") + guard.image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&guard.image, out.data(), &size, 0, image.pixels().data(), 0, nullptr)) {
    throw Error(ErrorCode::IoError, std::string("PNG encode failed: ") + guard.image.message);
  }
  out.resize(size);
  return out;
}

Rgba8Image decode_png(std::span<const std::uint8_t> bytes) {
  ImageGuard guard;
  if (!png_image_begin_read_from_memory(&guard.image, bytes.data(), bytes.size())) {
    throw Error(ErrorCode::BadMagic, std::string("not a PNG: ") + guard.image.message);
  }
  guard.image.format = PNG_FORMAT_RGBA;
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(guard.image));
  if (!png_image_finish_read(&guard.image, nullptr, pixels.data(), 0, nullptr)) {
    throw Error(ErrorCode::BadMagic, std::string("PNG decode failed: ") + guard.image.message);
  }
  return Rgba8Image(guard.image.height, guard.image.width, std::move(pixels));
}

Rgba8Image read_png(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  return decode_png(bytes);
}

void write_png(const Rgba8Image& image, const std::filesystem::path& path) {
  write_file_bytes(path, encode_png(image));
}

}  // namespace forgeline
