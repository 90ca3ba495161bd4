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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forgeline/camera.hpp"
#include "forgeline/denoise.hpp"
#include "forgeline/volume.hpp"

namespace forgeline {

/// Which history frames guide the next segment.
class ConditionKind {
 public:
  enum class Type { SingleFrame, PreviousLatents, FullClip };

  static ConditionKind single_frame() { return ConditionKind(Type::SingleFrame, 1); }
  static ConditionKind previous_latents(std::size_t frames) { return ConditionKind(Type::PreviousLatents, frames); }
  static ConditionKind full_clip() { return ConditionKind(Type::FullClip, 0); }

  /// "single", "full" or "previous:<n>". Throws InvalidKind.
  static ConditionKind parse(std::string_view text);
  std::string to_string() const;

  Type type() const noexcept { return type_; }
  std::size_t frames() const noexcept { return frames_; }

  /// Head length for a timeline of `history` frames. Throws InvalidKind when
  /// PreviousLatents asks for 0 or more frames than exist.
  std::size_t head_length(std::size_t history) const;

  bool operator==(const ConditionKind&) const = default;

 private:
  ConditionKind(Type type, std::size_t frames) : type_(type), frames_(frames) {}
  Type type_;
  std::size_t frames_;
};

struct SessionConfig {
  MotionParams motion;
  std::size_t steps = 8;
  std::uint64_t seed = 0;
  ActionCompression compression;

  void validate() const;
};

struct SegmentRecord {
  std::vector<ActionKey> keys;
  std::size_t first_frame = 0;  // inclusive
  std::size_t end_frame = 0;    // exclusive
  ConditionKind kind = ConditionKind::single_frame();

  bool operator==(const SegmentRecord&) const = default;
};

/// A growing clip. Frame 0 is the encoded start image; every later frame
/// belongs to exactly one logged segment.
struct SessionState {
  LatentVolume timeline;
  CameraTrajectory trajectory;
  SessionConfig config;
  std::vector<SegmentRecord> segment_log;

  std::size_t frame_count() const noexcept { return timeline.frames(); }
};

/// History frames followed by zero-filled slots for the frames to generate.
/// `history_mask` is 1 on history frames and 0 on frames to denoise.
struct HybridInput {
  LatentVolume latents;
  BinaryMask history_mask;
  std::size_t first_frame = 0;  // absolute timeline index of latents frame 0
  std::size_t head_frames = 0;
  std::size_t new_frames = 0;
};

/// Throws EmptyImage for a zero-size image.
SessionState start_session(const Rgba8Image& image, const CameraPose& pose, const SessionConfig& config);

/// Poses the next extension would append (without the current last pose).
CameraTrajectory plan_extension_poses(const SessionState& session, std::span<const ActionKey> keys);

HybridInput build_hybrid_input(const SessionState& session, const ConditionKind& kind, std::size_t new_frames);

/// Converts the history convention (1 = history) to the inpainting
/// convention (1 = synthesize).
BinaryMask history_to_inpaint_mask(const BinaryMask& history);

/// Appends segment_frames * keys.size() frames. The head frames chosen by
/// `kind` are held fixed by time-axis inpainting and the compressed Plucker
/// field of the new poses rides along in the condition bundle. Existing
/// frames are never modified. Throws EmptyKeyList or InvalidKind.
SessionState extend(const SessionState& session, std::span<const ActionKey> keys, const ConditionKind& kind,
                    const Denoiser& denoiser);

/// Loop clip of `total_frames` frames whose first and last frames are both
/// the encoded image, bit-exactly. Throws TooFewFrames when total_frames < 3.
LatentVolume make_loop(const Rgba8Image& image, std::size_t total_frames, const Denoiser& denoiser,
                       const Schedule& schedule, std::uint64_t seed);

/// Writes timeline.fglv, trajectory.txt and session.json into `dir`.
void export_session(const SessionState& session, const std::filesystem::path& dir);
SessionState import_session(const std::filesystem::path& dir);

}  // namespace forgeline
