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

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forgeline/volume.hpp"

namespace forgeline {

// Conventions: right-handed world, y up. Cameras look down their local -z
// with +x right and +y up; image rows grow downward. Yaw is the heading
// measured clockwise from -z toward +x when seen from above (Right
// increases it); pitch is the elevation of the view direction (Up
// increases it). Pixel rays go through pixel centers (u + 0.5, v + 0.5).

enum class ActionKey { W, A, S, D, Up, Left, Down, Right, Space };

std::string_view key_name(ActionKey key) noexcept;
/// Accepts the canonical names ("W", "Up", ...) case-insensitively.
std::optional<ActionKey> parse_key(std::string_view text) noexcept;
/// Parses a comma- or space-separated key list. Throws UnknownKey.
std::vector<ActionKey> parse_keys(std::string_view text);

struct Intrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;

  /// Symmetric pinhole with the given horizontal field of view.
  static Intrinsics from_fov(std::size_t height, std::size_t width, double horizontal_fov_rad);
  bool operator==(const Intrinsics&) const = default;
};

struct CameraPose {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();  // camera-to-world
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  Intrinsics intrinsics;

  Eigen::Vector3d forward() const { return -rotation.col(2); }
  /// Elevation of the view direction, in radians.
  double pitch() const;
  /// Heading of the view direction (clockwise from -z), in radians.
  double yaw() const;
};

using CameraTrajectory = std::vector<CameraPose>;

struct MotionParams {
  double speed = 0.1;                        // world units per frame
  double yaw_rate = 0.19634954084936207;     // pi/16 per frame
  double pitch_rate = 0.09817477042468103;   // pi/32 per frame
  double jump_height = 0.5;                  // apex of the Space arc
  std::size_t segment_frames = 8;            // frames per key

  /// Throws InvalidMotionParams.
  void validate() const;
};

/// Pitch stays strictly inside (-pi/2, pi/2); it is clamped to this bound.
inline constexpr double kPitchLimit = 1.5697963267948966;  // pi/2 - 1e-3

/// Rotation for a roll-free camera with the given heading and elevation.
Eigen::Matrix3d rotation_from_yaw_pitch(double yaw, double pitch);

/// Gram-Schmidt on the columns, keeping a right-handed frame.
Eigen::Matrix3d orthonormalize(const Eigen::Matrix3d& m);

/// Expands each key into `segment_frames` per-frame poses starting from
/// `start`. The returned trajectory begins with `start` itself, so it holds
/// 1 + segment_frames * keys.size() poses. Throws EmptyKeyList.
CameraTrajectory fold_actions(const CameraPose& start, std::span<const ActionKey> keys, const MotionParams& params);

/// Per-pixel Plucker coordinates of the camera rays as a (6, 1, h, w)
/// volume with channels (m_x, m_y, m_z, d_x, d_y, d_z), d unit length and
/// m = center x d. Throws DegenerateIntrinsics when fx or fy is zero.
LatentVolume pluecker_field(const CameraPose& pose, std::size_t height, std::size_t width);

/// Stacks per-pose fields into a (6, F, h, w) volume.
LatentVolume pluecker_stack(std::span<const CameraPose> poses, std::size_t height, std::size_t width);

/// World-space unit direction of the ray through pixel (u, v).
Eigen::Vector3d pixel_ray(const CameraPose& pose, double u, double v);

enum class EncoderMode { AveragePool, ZeroInit };

struct ActionCompression {
  std::size_t spatial_factor = 8;
  std::size_t temporal_factor = 4;
  /// Replicate the last row/column/frame up to the next multiple.
  bool pad = true;
  EncoderMode mode = EncoderMode::AveragePool;
};

/// Stand-in for the learned action encoder: mean over
/// (temporal x spatial x spatial) blocks, giving
/// (6, ceil(F/ft), ceil(H/fs), ceil(W/fs)). ZeroInit returns zeros of that
/// shape. Without padding, throws NonDivisibleShape unless the factors
/// divide the grid.
LatentVolume compress_actions(const LatentVolume& field, const ActionCompression& options);

/// Text export, one pose per line after a '#' header:
///   t r00 r01 r02 r10 r11 r12 r20 r21 r22 cx cy cz fx fy px py
/// where (cx, cy, cz) is the center and (px, py) the principal point.
std::string format_trajectory(std::span<const CameraPose> poses, std::size_t first_frame = 0);
/// Throws BadTrajectory on malformed lines.
CameraTrajectory parse_trajectory(std::string_view text);
void save_trajectory(std::span<const CameraPose> poses, const std::filesystem::path& path);
CameraTrajectory load_trajectory(const std::filesystem::path& path);

/// Placeholder for 6-DoF reconstruction from footage; always throws
/// NotImplemented.
CameraTrajectory estimate_trajectory_from_frames(std::span<const Rgba8Image> frames);

}  // namespace forgeline
