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

#include "forgeline/preview.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "forgeline/codec.hpp"
#include "forgeline/error.hpp"

namespace forgeline {

namespace {

constexpr double kNearPlane = 1e-6;

struct Splat {
  double depth;
  int x;
  int y;
};

}  // namespace

std::optional<Eigen::Vector2d> project_point(const CameraPose& pose, const Eigen::Vector3d& point) {
  const Intrinsics& k = pose.intrinsics;
  if (k.fx == 0.0 || k.fy == 0.0) throw Error(ErrorCode::DegenerateIntrinsics, "focal length is zero");
  const Eigen::Vector3d q = pose.rotation.transpose() * (point - pose.center);
  const double depth = -q.z();
  if (depth <= kNearPlane) return std::nullopt;
  return Eigen::Vector2d(k.cx + k.fx * q.x() / depth, k.cy - k.fy * q.y() / depth);
}

Rgba8Image render_preview(const CameraPose& pose, const SceneOptions& scene) {
  Rgba8Image img(scene.height, scene.width);
  if (scene.background) {
    if (scene.background->height() != scene.height || scene.background->width() != scene.width) {
      throw Error(ErrorCode::WrongShape, "preview background does not match the preview size");
    }
    img = *scene.background;
  } else {
    for (std::size_t y = 0; y < scene.height; ++y)
      for (std::size_t x = 0; x < scene.width; ++x) img.set_pixel(y, x, 24, 26, 34);
  }

  const Intrinsics& k = pose.intrinsics;
  const Eigen::Matrix3d& R = pose.rotation;
  if (scene.horizon && std::abs(R(1, 1)) > 1e-9) {
    // Pixels whose ray has zero world-y component.
    for (std::size_t u = 0; u < scene.width; ++u) {
      const double a = (static_cast<double>(u) + 0.5 - k.cx) / k.fx;
      const double b = (R(1, 2) - R(1, 0) * a) / R(1, 1);
      const double v = std::floor(k.cy - b * k.fy);
      if (v >= 0.0 && v < static_cast<double>(scene.height)) {
        img.set_pixel(static_cast<std::size_t>(v), u, 96, 140, 210);
      }
    }
  }

  std::vector<Splat> splats;
  const int n = scene.lattice_half_extent;
  for (int i = -n; i <= n; ++i) {
    for (int j = -n; j <= n; ++j) {
      const Eigen::Vector3d p(i * scene.spacing, 0.0, j * scene.spacing);
      const auto uv = project_point(pose, p);
      if (!uv) continue;
      const double depth = -(R.transpose() * (p - pose.center)).z();
      const double fx = std::floor(uv->x()), fy = std::floor(uv->y());
      if (fx < -2 || fy < -2 || fx > static_cast<double>(scene.width) + 1 || fy > static_cast<double>(scene.height) + 1) {
        continue;
      }
      splats.push_back(Splat{depth, static_cast<int>(fx), static_cast<int>(fy)});
    }
  }
  std::stable_sort(splats.begin(), splats.end(), [](const Splat& a, const Splat& b) { return a.depth > b.depth; });

  for (const Splat& s : splats) {
    const int radius = s.depth < 2.5 ? 1 : 0;
    const auto shade = static_cast<std::uint8_t>(std::clamp(255.0 - 12.0 * s.depth, 70.0, 255.0));
    for (int dy = -radius; dy <= radius; ++dy) {
      for (int dx = -radius; dx <= radius; ++dx) {
        const int x = s.x + dx, y = s.y + dy;
        if (x < 0 || y < 0 || x >= static_cast<int>(scene.width) || y >= static_cast<int>(scene.height)) continue;
        img.set_pixel(static_cast<std::size_t>(y), static_cast<std::size_t>(x), shade, shade, 120);
      }
    }
  }
  return img;
}

LatentVolume scene_extension_target(const SessionState& session, std::span<const CameraPose> new_poses) {
  SceneOptions scene;
  scene.height = session.timeline.height();
  scene.width = session.timeline.width();
  scene.background = decode_frame(session.timeline, 0);
  std::vector<Rgba8Image> frames;
  frames.reserve(new_poses.size());
  for (const CameraPose& pose : new_poses) frames.push_back(render_preview(pose, scene));
  if (frames.empty()) return session.timeline;
  return concat_frames(session.timeline, encode_frames(frames));
}

CameraPose default_start_pose(std::size_t height, std::size_t width) {
  CameraPose pose;
  pose.center = Eigen::Vector3d(0.0, 1.0, 0.0);
  pose.intrinsics = Intrinsics::from_fov(height, width, std::numbers::pi / 2.0);
  return pose;
}

SessionState extend_toward_scene(const SessionState& session, std::span<const ActionKey> keys,
                                 const ConditionKind& kind) {
  const CameraTrajectory poses = plan_extension_poses(session, keys);
  const ToyDenoiser denoiser(scene_extension_target(session, poses));
  return extend(session, keys, kind, denoiser);
}

}  // namespace forgeline
