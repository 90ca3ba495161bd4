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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forgeline/camera.hpp"

namespace forgeline {

// Wire format: every message is a 4-byte big-endian payload length followed
// by a UTF-8 JSON object. Binary PNG payloads travel as standard base64.
//
// Client -> server:
//   {"verb": "start", "image": "<png>", "condition": "single"?}
//   {"verb": "key", "session": "s1", "key": "W"}
//   {"verb": "reset", "session": "s1"}
//   {"verb": "export", "session": "s1"}
// Server -> client:
//   {"session": "s1", "status": "started" | "extended" | "reset" | "exported" | "error",
//    "frame_range": [first, end), "frame_count": n, "poses": [line, ...],
//    "previews": ["<png>", ...], "queue_depth": n, "path": "...",
//    "error": "UnknownSession", "detail": "..."}

inline constexpr std::size_t kMaxMessageBytes = 64u << 20;
inline constexpr std::size_t kSessionQueueDepth = 32;

enum class Verb { Start, Key, Reset, Export };

std::string_view verb_name(Verb verb) noexcept;

struct SteerMessage {
  Verb verb = Verb::Start;
  std::optional<std::string> session;
  std::optional<ActionKey> key;
  std::optional<std::vector<std::uint8_t>> image_png;
  std::optional<std::string> condition;

  bool operator==(const SteerMessage&) const = default;
};

struct SteerReply {
  std::string session;
  std::string status;
  std::size_t frame_first = 0;
  std::size_t frame_end = 0;
  std::size_t frame_count = 0;
  std::vector<std::string> poses;
  std::vector<std::vector<std::uint8_t>> previews;
  std::size_t queue_depth = 0;
  std::optional<std::string> path;
  std::optional<std::string> error;
  std::optional<std::string> detail;

  bool ok() const noexcept { return !error.has_value(); }
  bool operator==(const SteerReply&) const = default;
};

std::string base64_encode(std::span<const std::uint8_t> bytes);
/// Throws BadMessage on malformed input.
std::vector<std::uint8_t> base64_decode(std::string_view text);

std::string message_to_json(const SteerMessage& message);
/// Throws BadMessage (unknown verb, missing field, bad key, bad base64).
SteerMessage message_from_json(std::string_view text);

std::string reply_to_json(const SteerReply& reply);
SteerReply reply_from_json(std::string_view text);

/// Prefixes the payload with its 4-byte big-endian length.
std::vector<std::uint8_t> frame_payload(std::string_view payload);

/// Incremental decoder for a byte stream of framed messages.
class FrameReader {
 public:
  void feed(std::span<const std::uint8_t> bytes);
  /// Next complete payload, if any. Throws BadMessage when a declared length
  /// exceeds kMaxMessageBytes.
  std::optional<std::string> next();
  std::size_t buffered() const noexcept { return buffer_.size() - offset_; }

 private:
  std::vector<std::uint8_t> buffer_;
  std::size_t offset_ = 0;
};

}  // namespace forgeline
