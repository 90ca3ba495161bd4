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
#include <optional>
#include <span>

#include "forgeline/camera.hpp"
#include "forgeline/extend.hpp"
#include "forgeline/volume.hpp"

namespace forgeline {

/// Procedural preview scene: a square ground lattice at y = 0 with unit
/// spacing (21 x 21 points by default) plus the horizon line.
struct SceneOptions {
  std::size_t height = 64;
  std::size_t width = 64;
  int lattice_half_extent = 10;
  double spacing = 1.0;
  bool horizon = true;
  /// Drawn under the scene; must match height x width when present.
  std::optional<Rgba8Image> background;
};

/// Continuous image position of a world point, or nullopt when the point is
/// not in front of the camera. Pixel (u, v) covers [u, u+1) x [v, v+1).
std::optional<Eigen::Vector2d> project_point(const CameraPose& pose, const Eigen::Vector3d& point);

/// Lattice points are drawn far to near so nearer points overwrite farther
/// ones; the result depends only on the pose and options.
Rgba8Image render_preview(const CameraPose& pose, const SceneOptions& scene);

/// Toy world-model target for an extension: the current timeline followed by
/// the scene rendered over the start frame at each new pose. Intended for a
/// ToyDenoiser so that interactive sessions produce visible camera motion.
LatentVolume scene_extension_target(const SessionState& session, std::span<const CameraPose> new_poses);

/// Camera one unit above the lattice, level, looking down -z with a 90 degree
/// horizontal field of view.
CameraPose default_start_pose(std::size_t height, std::size_t width);

/// One extension step whose toy target is the scene rendered over frame 0
/// along the planned poses.
SessionState extend_toward_scene(const SessionState& session, std::span<const ActionKey> keys,
                                 const ConditionKind& kind);

}  // namespace forgeline
