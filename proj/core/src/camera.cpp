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

#include "forgeline/camera.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "forgeline/container.hpp"
#include "forgeline/error.hpp"

namespace forgeline {

namespace {

constexpr std::array<std::pair<ActionKey, std::string_view>, 9> kKeyNames{{
    {ActionKey::W, "W"},
    {ActionKey::A, "A"},
    {ActionKey::S, "S"},
    {ActionKey::D, "D"},
    {ActionKey::Up, "Up"},
    {ActionKey::Left, "Left"},
    {ActionKey::Down, "Down"},
    {ActionKey::Right, "Right"},
    {ActionKey::Space, "Space"},
}};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

Eigen::Matrix3d rot_y(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Eigen::Matrix3d r;
  r << c, 0, s, 0, 1, 0, -s, 0, c;
  return r;
}

Eigen::Matrix3d rot_x(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Eigen::Matrix3d r;
  r << 1, 0, 0, 0, c, -s, 0, s, c;
  return r;
}

}  // namespace

std::string_view key_name(ActionKey key) noexcept {
  for (const auto& [k, name] : kKeyNames)
    if (k == key) return name;
  return "?";
}

std::optional<ActionKey> parse_key(std::string_view text) noexcept {
  for (const auto& [k, name] : kKeyNames)
    if (iequals(text, name)) return k;
  return std::nullopt;
}

std::vector<ActionKey> parse_keys(std::string_view text) {
  std::vector<ActionKey> keys;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ',' || std::isspace(static_cast<unsigned char>(text[i])))) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ',' && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) {
      const auto token = text.substr(i, j - i);
      const auto key = parse_key(token);
      if (!key) throw Error(ErrorCode::UnknownKey, "unknown key '" + std::string(token) + "'");
      keys.push_back(*key);
    }
    i = j;
  }
  return keys;
}

Intrinsics Intrinsics::from_fov(std::size_t height, std::size_t width, double horizontal_fov_rad) {
  const double f = 0.5 * static_cast<double>(width) / std::tan(0.5 * horizontal_fov_rad);
  return Intrinsics{f, f, 0.5 * static_cast<double>(width), 0.5 * static_cast<double>(height)};
}

double CameraPose::pitch() const { return std::asin(std::clamp(forward().y(), -1.0, 1.0)); }

double CameraPose::yaw() const {
  const Eigen::Vector3d f = forward();
  return std::atan2(f.x(), -f.z());
}

void MotionParams::validate() const {
  if (!(speed > 0.0) || !(yaw_rate > 0.0) || !(pitch_rate > 0.0) || segment_frames == 0 || !(jump_height >= 0.0)) {
    throw Error(ErrorCode::InvalidMotionParams,
                "need speed > 0, yaw_rate > 0, pitch_rate > 0, jump_height >= 0 and segment_frames >= 1");
  }
}

Eigen::Matrix3d rotation_from_yaw_pitch(double yaw, double pitch) { return rot_y(-yaw) * rot_x(pitch); }

Eigen::Matrix3d orthonormalize(const Eigen::Matrix3d& m) {
  const Eigen::Vector3d c0 = m.col(0).normalized();
  const Eigen::Vector3d c1 = (m.col(1) - c0.dot(m.col(1)) * c0).normalized();
  Eigen::Matrix3d out;
  out.col(0) = c0;
  out.col(1) = c1;
  out.col(2) = c0.cross(c1);
  return out;
}

CameraTrajectory fold_actions(const CameraPose& start, std::span<const ActionKey> keys, const MotionParams& params) {
  if (keys.empty()) throw Error(ErrorCode::EmptyKeyList, "no keys to fold");
  params.validate();

  const double yaw0 = start.yaw();
  const double pitch0 = start.pitch();
  double yaw_delta = 0.0;
  double pitch_delta = 0.0;
  Eigen::Vector3d center = start.center;

  CameraTrajectory out;
  out.reserve(1 + keys.size() * params.segment_frames);
  out.push_back(start);
  const auto F = static_cast<double>(params.segment_frames);

  for (ActionKey key : keys) {
    const double base_y = center.y();
    for (std::size_t k = 1; k <= params.segment_frames; ++k) {
      switch (key) {
        case ActionKey::Left: yaw_delta -= params.yaw_rate; break;
        case ActionKey::Right: yaw_delta += params.yaw_rate; break;
        case ActionKey::Up:
          pitch_delta = std::clamp(pitch0 + pitch_delta + params.pitch_rate, -kPitchLimit, kPitchLimit) - pitch0;
          break;
        case ActionKey::Down:
          pitch_delta = std::clamp(pitch0 + pitch_delta - params.pitch_rate, -kPitchLimit, kPitchLimit) - pitch0;
          break;
        default: break;
      }
      const double yaw = yaw0 + yaw_delta;
      const Eigen::Vector3d forward(std::sin(yaw), 0.0, -std::cos(yaw));
      const Eigen::Vector3d right(std::cos(yaw), 0.0, std::sin(yaw));
      switch (key) {
        case ActionKey::W: center += params.speed * forward; break;
        case ActionKey::S: center -= params.speed * forward; break;
        case ActionKey::A: center -= params.speed * right; break;
        case ActionKey::D: center += params.speed * right; break;
        case ActionKey::Space: {
          const double s = static_cast<double>(k) / F;
          center.y() = base_y + params.jump_height * 4.0 * s * (1.0 - s);
          break;
        }
        default: break;
      }
      CameraPose pose;
      pose.rotation = orthonormalize(rot_y(-yaw_delta) * start.rotation * rot_x(pitch_delta));
      pose.center = center;
      pose.intrinsics = start.intrinsics;
      out.push_back(pose);
    }
  }
  return out;
}

Eigen::Vector3d pixel_ray(const CameraPose& pose, double u, double v) {
  const Intrinsics& k = pose.intrinsics;
  if (k.fx == 0.0 || k.fy == 0.0) throw Error(ErrorCode::DegenerateIntrinsics, "focal length is zero");
  const Eigen::Vector3d local((u + 0.5 - k.cx) / k.fx, -(v + 0.5 - k.cy) / k.fy, -1.0);
  return (pose.rotation * local).normalized();
}

LatentVolume pluecker_field(const CameraPose& pose, std::size_t height, std::size_t width) {
  const Intrinsics& k = pose.intrinsics;
  if (k.fx == 0.0 || k.fy == 0.0) throw Error(ErrorCode::DegenerateIntrinsics, "focal length is zero");
  LatentVolume out(Shape4{6, 1, height, width});
  for (std::size_t v = 0; v < height; ++v) {
    for (std::size_t u = 0; u < width; ++u) {
      const Eigen::Vector3d d = pixel_ray(pose, static_cast<double>(u), static_cast<double>(v));
      const Eigen::Vector3d m = pose.center.cross(d);
      for (int i = 0; i < 3; ++i) {
        out.at(static_cast<std::size_t>(i), 0, v, u) = static_cast<float>(m[i]);
        out.at(static_cast<std::size_t>(3 + i), 0, v, u) = static_cast<float>(d[i]);
      }
    }
  }
  return out;
}

LatentVolume pluecker_stack(std::span<const CameraPose> poses, std::size_t height, std::size_t width) {
  LatentVolume out(Shape4{6, poses.size(), height, width});
  for (std::size_t f = 0; f < poses.size(); ++f) {
    const LatentVolume one = pluecker_field(poses[f], height, width);
    for (std::size_t c = 0; c < 6; ++c)
      for (std::size_t v = 0; v < height; ++v)
        for (std::size_t u = 0; u < width; ++u) out.at(c, f, v, u) = one.at(c, 0, v, u);
  }
  return out;
}

LatentVolume compress_actions(const LatentVolume& field, const ActionCompression& options) {
  const std::size_t fs = options.spatial_factor, ft = options.temporal_factor;
  if (fs == 0 || ft == 0) throw Error(ErrorCode::NonDivisibleShape, "compression factors must be >= 1");
  const std::size_t F = field.frames(), H = field.height(), W = field.width();
  if (!options.pad && (F % ft || H % fs || W % fs)) {
    throw Error(ErrorCode::NonDivisibleShape, fmt::format("grid {}x{}x{} not divisible by ({}, {}, {})", F, H, W,
                                                          ft, fs, fs));
  }
  const Shape4 out_shape{field.channels(), (F + ft - 1) / ft, (H + fs - 1) / fs, (W + fs - 1) / fs};
  LatentVolume out(out_shape);
  if (options.mode == EncoderMode::ZeroInit) return out;
  const double n = static_cast<double>(ft * fs * fs);
  for (std::size_t c = 0; c < out_shape.channels; ++c) {
    for (std::size_t t = 0; t < out_shape.frames; ++t) {
      for (std::size_t h = 0; h < out_shape.height; ++h) {
        for (std::size_t w = 0; w < out_shape.width; ++w) {
          double acc = 0.0;
          for (std::size_t dt = 0; dt < ft; ++dt)
            for (std::size_t dh = 0; dh < fs; ++dh)
              for (std::size_t dw = 0; dw < fs; ++dw)
                acc += field.at(c, std::min(t * ft + dt, F - 1), std::min(h * fs + dh, H - 1),
                                std::min(w * fs + dw, W - 1));
          out.at(c, t, h, w) = static_cast<float>(acc / n);
        }
      }
    }
  }
  return out;
}

std::string format_trajectory(std::span<const CameraPose> poses, std::size_t first_frame) {
  std::string out = "# t r00 r01 r02 r10 r11 r12 r20 r21 r22 cx cy cz fx fy px py\n";
  for (std::size_t i = 0; i < poses.size(); ++i) {
    const CameraPose& p = poses[i];
    out += fmt::format("{}", first_frame + i);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) out += fmt::format(" {}", p.rotation(r, c));
    out += fmt::format(" {} {} {} {} {} {} {}\n", p.center.x(), p.center.y(), p.center.z(), p.intrinsics.fx,
                       p.intrinsics.fy, p.intrinsics.cx, p.intrinsics.cy);
  }
  return out;
}

CameraTrajectory parse_trajectory(std::string_view text) {
  CameraTrajectory poses;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    std::array<double, 17> values{};
    std::size_t count = 0;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && (*p == ' ' || *p == '\t')) ++p;
      if (p == end) break;
      if (count == values.size()) throw Error(ErrorCode::BadTrajectory, fmt::format("line {}: too many fields", line_no));
      const auto [next, ec] = std::from_chars(p, end, values[count]);
      if (ec != std::errc{}) throw Error(ErrorCode::BadTrajectory, fmt::format("line {}: bad number", line_no));
      p = next;
      ++count;
    }
    if (count != values.size()) {
      throw Error(ErrorCode::BadTrajectory, fmt::format("line {}: expected 17 fields, got {}", line_no, count));
    }
    CameraPose pose;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) pose.rotation(r, c) = values[static_cast<std::size_t>(1 + 3 * r + c)];
    pose.center = Eigen::Vector3d(values[10], values[11], values[12]);
    pose.intrinsics = Intrinsics{values[13], values[14], values[15], values[16]};
    poses.push_back(pose);
  }
  return poses;
}

void save_trajectory(std::span<const CameraPose> poses, const std::filesystem::path& path) {
  const std::string text = format_trajectory(poses);
  write_file_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

CameraTrajectory load_trajectory(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  return parse_trajectory(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

CameraTrajectory estimate_trajectory_from_frames(std::span<const Rgba8Image>) {
  throw Error(ErrorCode::NotImplemented, "trajectory reconstruction from footage is not available");
}

}  // namespace forgeline
