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


// Acceptance runner: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "forgeline/camera.hpp"
#include "forgeline/codec.hpp"
#include "forgeline/config.hpp"
#include "forgeline/container.hpp"
#include "forgeline/corpus.hpp"
#include "forgeline/curation.hpp"
#include "forgeline/denoise.hpp"
#include "forgeline/error.hpp"
#include "forgeline/extend.hpp"
#include "forgeline/preview.hpp"
#include "forgeline/seamless.hpp"
#include "forgeline/tiling.hpp"
#include "forgeline/video_analysis.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace forgeline;
using forgeline::testing::random_image;
using forgeline::testing::random_mask;
using forgeline::testing::random_volume;
using forgeline::testing::solid_image;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Paths {
  fs::path golden;
  fs::path scratch;
};

// 1 ---------------------------------------------------------------------------
Outcome toy_exactness() {
  Outcome o;
  std::mt19937_64 rng(1001);
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Shape4 shape{1 + rng() % 4, 1 + rng() % 4, 4 + rng() % 13, 4 + rng() % 13};
    auto target = random_volume(rng, shape, -2.0f, 2.0f);
    ToyDenoiser toy(target);
    for (std::size_t n : {1u, 2u, 4u, 8u, 16u}) {
      auto out = sample(toy, Schedule::uniform(n), shape, rng());
      worst = std::max(worst, max_abs_diff(out, target));
    }
  }
  const double elapsed = seconds_since(t0);
  o.require(worst <= 1e-5, "max error " + fmt_double(worst));
  o.require(elapsed < 5.0, "took " + fmt_double(elapsed) + " s");
  if (o.pass) o.detail = "max error " + fmt_double(worst) + ", " + fmt_double(elapsed) + " s";
  return o;
}

// 2 ---------------------------------------------------------------------------
Outcome inpaint_preservation() {
  Outcome o;
  std::mt19937_64 rng(1002);
  std::size_t cells = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t t = 1 + rng() % 3, h = 2 + rng() % 10, w = 2 + rng() % 10, c = 1 + rng() % 4;
    auto known = random_volume(rng, {c, t, h, w}, -3.0f, 3.0f);
    auto mask = random_mask(rng, t, h, w, 0.1 + 0.8 * double(rng() % 100) / 100.0);
    auto target = random_volume(rng, known.shape());
    ToyDenoiser toy(target);
    HarmonicFillDenoiser fill(8);
    const Denoiser& d = (i % 2) ? static_cast<const Denoiser&>(toy) : fill;
    auto out = sample_inpaint(d, Schedule::uniform(1 + rng() % 12), known, mask, rng());
    for (std::size_t ch = 0; ch < c; ++ch)
      for (std::size_t a = 0; a < t; ++a)
        for (std::size_t b = 0; b < h; ++b)
          for (std::size_t e = 0; e < w; ++e)
            if (!mask.test(a, b, e)) {
              ++cells;
              o.require(out.at(ch, a, b, e) == known.at(ch, a, b, e), "case " + std::to_string(i) + " changed a known cell");
            }
  }
  if (o.pass) o.detail = "200 cases, " + std::to_string(cells) + " known cells bit-equal";
  return o;
}

// 3 ---------------------------------------------------------------------------
Outcome seamless_checks() {
  Outcome o;
  std::mt19937_64 rng(1003);
  HarmonicFillDenoiser fill(32);

  // (a) outside the mapped-back band nothing changes, through the byte codec.
  for (int i = 0; i < 30; ++i) {
    const std::size_t h = 2 * (4 + rng() % 10), w = 2 * (4 + rng() % 10);
    SeamSpec spec;
    spec.direction = static_cast<SeamDirection>(i % 3);
    spec.band_width = 2 * (1 + rng() % 3);
    auto img = random_image(rng, h, w);
    auto out = make_seamless(img, spec, fill, Schedule::uniform(4), rng());
    auto region = seam_region(h, w, spec);
    for (std::size_t y = 0; y < h; ++y)
      for (std::size_t x = 0; x < w; ++x)
        if (!region.test(0, y, x))
          for (std::size_t c = 0; c < 4; ++c)
            o.require(out.at(y, x, c) == img.at(y, x, c), "(a) pixel outside the band changed");
  }

  // (b) periodic target: corrupt the wrap band, repair, check the junction.
  double worst_excess = -1e9;
  for (int i = 0; i < 20; ++i) {
    const std::size_t h = 4 + rng() % 8, w = 2 * (8 + rng() % 24);
    const std::size_t band = 2 * (2 + rng() % 3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double a1 = u(rng), a2 = 0.5 * u(rng), ph = 6.0 * u(rng);
    LatentVolume q(Shape4{3, 1, h, w});
    for (std::size_t c = 0; c < 3; ++c)
      for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x) {
          const double s = 2.0 * std::numbers::pi * double(x) / double(w);
          q.at(c, 0, y, x) = float(0.5 + 0.3 * a1 * std::sin(s + ph + c) + 0.2 * a2 * std::cos(2 * s + 0.1 * y));
        }
    auto broken = q;
    for (std::size_t c = 0; c < 3; ++c)
      for (std::size_t y = 0; y < h; ++y)
        for (std::size_t k = 0; k < band / 2; ++k) {
          broken.at(c, 0, y, k) = float(u(rng));
          broken.at(c, 0, y, w - 1 - k) = float(u(rng));
        }
    SeamSpec spec;
    spec.band_width = band;
    ToyDenoiser toy(swap_halves(q, SpatialAxis::Width));
    auto out = make_seamless_latent(broken, spec, toy, Schedule::uniform(8), rng());
    for (std::size_t c = 0; c < 3; ++c)
      for (std::size_t y = 0; y < h; ++y) {
        double interior = 0.0;
        for (std::size_t x = 0; x + 1 < w; ++x)
          interior = std::max(interior, double(std::abs(out.at(c, 0, y, x + 1) - out.at(c, 0, y, x))));
        const double junction = std::abs(out.at(c, 0, y, 0) - out.at(c, 0, y, w - 1));
        worst_excess = std::max(worst_excess, junction - interior);
        o.require(junction <= interior + 1e-4, "(b) junction jump " + fmt_double(junction) + " > interior " +
                                                   fmt_double(interior));
      }
  }

  // (c) swap involution.
  for (int i = 0; i < 500; ++i) {
    const Shape4 shape{1 + rng() % 3, 1 + rng() % 3, 2 * (1 + rng() % 8), 2 * (1 + rng() % 8)};
    auto v = random_volume(rng, shape);
    const auto axis = (i % 2) ? SpatialAxis::Width : SpatialAxis::Height;
    o.require(bit_equal(swap_halves(swap_halves(v, axis), axis), v), "(c) swap is not an involution");
  }
  if (o.pass) o.detail = "(a) 30 images, (b) 20 periodic targets, worst junction excess " + fmt_double(worst_excess) + ", (c) 500 volumes";
  return o;
}

// 4 ---------------------------------------------------------------------------
Outcome tile_planning() {
  Outcome o;
  std::mt19937_64 rng(1004);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t len = 1 + rng() % 2000, tile = 1 + rng() % 800, overlap = rng() % tile;
    const auto starts = plan_axis(len, tile, overlap);
    const std::size_t extent = std::min(tile, len);
    std::vector<std::uint32_t> hits(len, 0);
    for (std::size_t k = 0; k < starts.size(); ++k) {
      o.require(starts[k] + extent <= len, "window out of bounds");
      if (k) o.require(starts[k] > starts[k - 1], "starts not increasing");
      if (starts[k] + extent > len) break;
      for (std::size_t j = starts[k]; j < starts[k] + extent; ++j) ++hits[j];
    }
    o.require(std::all_of(hits.begin(), hits.end(), [](auto h) { return h > 0; }),
              "uncovered index for length " + std::to_string(len));
  }
  o.require(plan_axis(1536, 768, 256) == std::vector<std::size_t>{0, 512, 768}, "1536/768/256 is not [0, 512, 768]");
  if (o.pass) o.detail = "1000 triples fully covered; 1536/768/256 -> [0, 512, 768]";
  return o;
}

// 5 ---------------------------------------------------------------------------
Outcome tiled_idempotence() {
  Outcome o;
  std::mt19937_64 rng(1005);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    TileParams params;
    std::size_t scale = 2;
    Shape4 low_shape;
    if (i == 0) {
      params.tile = kDeskTile;
      params.overlap = kDeskOverlap;
      low_shape = {4, 17, 96, 80};
    } else {
      params.tile = {1 + rng() % 5, 4 + rng() % 20, 4 + rng() % 20};
      params.overlap = {rng() % params.tile.t, rng() % params.tile.h, rng() % params.tile.w};
      low_shape = {1 + rng() % 3, 1 + rng() % 7, 2 + rng() % 15, 2 + rng() % 15};
      scale = (i % 4 == 0) ? 4 : 2;
    }
    params.feather = (i % 3 == 1);
    params.threads = 1 + i % 4;
    auto low = random_volume(rng, low_shape);
    auto truth = random_volume(rng, {low_shape.channels, low_shape.frames, low_shape.height * scale, low_shape.width * scale});
    ToyDenoiser toy(truth);
    const auto schedule = Schedule::uniform(i == 0 ? 4 : 1 + rng() % 8);
    const std::uint64_t seed = rng();
    auto tiled = upscale_video(low, scale, toy, schedule, params, seed);
    ConditionBundle cond;
    cond.extra_channels = upsample(low, scale, scale);
    auto untiled = sample(toy, schedule, truth.shape(), seed, cond);
    worst = std::max(worst, max_abs_diff(tiled, untiled));
  }
  o.require(worst <= 1e-4, "tiled vs untiled differ by " + fmt_double(worst));

  // Constant tiles: every covered cell is the mean of its tiles' constants.
  double worst_avg = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Shape4 shape{1, 1 + rng() % 6, 4 + rng() % 40, 4 + rng() % 40};
    const Extent3 tile{1 + rng() % 4, 2 + rng() % 12, 2 + rng() % 12};
    const Extent3 overlap{rng() % tile.t, rng() % tile.h, rng() % tile.w};
    auto plan = make_plan(shape, tile, overlap);
    std::vector<LatentVolume> tiles;
    std::vector<float> values;
    for (const auto& win : plan.windows) {
      values.push_back(float(rng() % 1000) / 1000.0f);
      tiles.emplace_back(Shape4{1, win.extent.t, win.extent.h, win.extent.w}, values.back());
    }
    auto out = blend_tiles(plan, tiles, false);
    for (std::size_t t = 0; t < shape.frames; ++t)
      for (std::size_t h = 0; h < shape.height; ++h)
        for (std::size_t w = 0; w < shape.width; ++w) {
          double sum = 0.0;
          int n = 0;
          for (std::size_t k = 0; k < plan.windows.size(); ++k) {
            const auto& win = plan.windows[k];
            if (t >= win.start.t && t < win.start.t + win.extent.t && h >= win.start.h && h < win.start.h + win.extent.h &&
                w >= win.start.w && w < win.start.w + win.extent.w) {
              sum += values[k];
              ++n;
            }
          }
          worst_avg = std::max(worst_avg, std::abs(out.at(0, t, h, w) - sum / n));
        }
  }
  o.require(worst_avg <= 1e-6, "overlap average off by " + fmt_double(worst_avg));
  if (o.pass) o.detail = "20 configs, max diff " + fmt_double(worst) + "; overlap average error " + fmt_double(worst_avg);
  return o;
}

// 6 ---------------------------------------------------------------------------
CameraPose random_pose(std::mt19937_64& rng, std::size_t h, std::size_t w) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CameraPose p;
  Eigen::Quaterniond q(u(rng), u(rng), u(rng), u(rng));
  if (q.norm() < 1e-3) q = Eigen::Quaterniond::Identity();
  p.rotation = q.normalized().toRotationMatrix();
  p.center = 5.0 * Eigen::Vector3d(u(rng), u(rng), u(rng));
  p.intrinsics = Intrinsics::from_fov(h, w, 0.5 + 1.5 * (u(rng) + 1.0) / 2.0);
  p.intrinsics.cx += 4.0 * u(rng);
  p.intrinsics.cy += 4.0 * u(rng);
  return p;
}

Outcome pluecker_invariants() {
  Outcome o;
  std::mt19937_64 rng(1006);
  double worst_norm = 0.0, worst_dot = 0.0, worst_slide = 0.0;
  for (int i = 0; i < 1000; ++i) {
    auto pose = random_pose(rng, 32, 32);
    auto f = pluecker_field(pose, 32, 32);
    for (std::size_t v = 0; v < 32; ++v)
      for (std::size_t u = 0; u < 32; ++u) {
        Eigen::Vector3d m(f.at(0, 0, v, u), f.at(1, 0, v, u), f.at(2, 0, v, u));
        Eigen::Vector3d d(f.at(3, 0, v, u), f.at(4, 0, v, u), f.at(5, 0, v, u));
        worst_norm = std::max(worst_norm, std::abs(d.norm() - 1.0));
        worst_dot = std::max(worst_dot, std::abs(m.dot(d)));
      }
    const std::size_t pu = rng() % 32, pv = rng() % 32;
    CameraPose moved = pose;
    moved.center += (double(rng() % 2000) / 100.0 - 10.0) * pixel_ray(pose, double(pu), double(pv));
    auto g = pluecker_field(moved, 32, 32);
    for (std::size_t c = 0; c < 6; ++c)
      worst_slide = std::max(worst_slide, double(std::abs(g.at(c, 0, pv, pu) - f.at(c, 0, pv, pu))));
  }
  o.require(worst_norm <= 1e-6, "| |d| - 1 | = " + fmt_double(worst_norm));
  o.require(worst_dot <= 1e-6, "|m.d| = " + fmt_double(worst_dot));
  o.require(worst_slide <= 1e-5, "slide changed the line by " + fmt_double(worst_slide));
  if (o.pass)
    o.detail = "| |d|-1 | " + fmt_double(worst_norm) + ", |m.d| " + fmt_double(worst_dot) + ", slide " + fmt_double(worst_slide);
  return o;
}

// 7 ---------------------------------------------------------------------------
Outcome camera_algebra() {
  Outcome o;
  std::mt19937_64 rng(1007);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MotionParams params;
  double worst_cancel = 0.0, worst_oracle = 0.0;
  const std::array<std::array<ActionKey, 2>, 4> pairs{{{ActionKey::W, ActionKey::S},
                                                       {ActionKey::A, ActionKey::D},
                                                       {ActionKey::Left, ActionKey::Right},
                                                       {ActionKey::Up, ActionKey::Down}}};
  for (int i = 0; i < 200; ++i) {
    CameraPose start;
    start.rotation = rotation_from_yaw_pitch(std::numbers::pi * u(rng), 0.5 * u(rng));
    start.center = 3.0 * Eigen::Vector3d(u(rng), u(rng), u(rng));
    start.intrinsics = Intrinsics::from_fov(32, 32, std::numbers::pi / 2);
    for (const auto& pair : pairs) {
      for (int order = 0; order < 2; ++order) {
        std::vector<ActionKey> keys{pair[order], pair[1 - order]};
        auto traj = fold_actions(start, keys, params);
        worst_cancel = std::max(worst_cancel, (traj.back().center - start.center).norm());
        worst_cancel = std::max(worst_cancel, (traj.back().rotation - start.rotation).cwiseAbs().maxCoeff());
      }
    }
    // Yaw by a random number of turn keys, then walk; the hand oracle rotates
    // the heading about world up and walks F * speed along it.
    const std::size_t turns = 1 + rng() % 4;
    const bool right = rng() % 2;
    std::vector<ActionKey> keys(turns, right ? ActionKey::Right : ActionKey::Left);
    keys.push_back(ActionKey::W);
    auto traj = fold_actions(start, keys, params);
    const double psi = start.yaw() + (right ? 1.0 : -1.0) * double(turns * params.segment_frames) * params.yaw_rate;
    const Eigen::Vector3d heading(std::sin(psi), 0.0, -std::cos(psi));
    const Eigen::Vector3d oracle = double(params.segment_frames) * params.speed * heading;
    const Eigen::Vector3d disp = traj.back().center - traj[turns * params.segment_frames].center;
    worst_oracle = std::max(worst_oracle, (disp - oracle).norm());
  }
  o.require(worst_cancel <= 1e-6, "opposite keys leave " + fmt_double(worst_cancel));
  o.require(worst_oracle <= 1e-6, "yaw-then-forward off by " + fmt_double(worst_oracle));

  std::size_t poses = 0;
  double max_pitch = 0.0;
  for (int s = 0; s < 10000; ++s) {
    MotionParams p;
    p.segment_frames = 1 + rng() % 8;
    p.pitch_rate = 0.05 + 0.5 * (u(rng) + 1.0);
    std::vector<ActionKey> keys(1 + rng() % 12);
    for (auto& k : keys) k = static_cast<ActionKey>(rng() % 9);
    CameraPose start;
    start.rotation = rotation_from_yaw_pitch(std::numbers::pi * u(rng), 1.5 * u(rng));
    start.intrinsics = Intrinsics::from_fov(16, 16, 1.0);
    for (const auto& pose : fold_actions(start, keys, p)) {
      ++poses;
      max_pitch = std::max(max_pitch, std::abs(pose.pitch()));
      o.require(std::abs(pose.pitch()) < std::numbers::pi / 2, "pitch reached the vertical");
    }
  }
  if (o.pass)
    o.detail = "cancel " + fmt_double(worst_cancel) + ", oracle " + fmt_double(worst_oracle) + ", max |pitch| " +
               fmt_double(max_pitch) + " over " + std::to_string(poses) + " poses";
  return o;
}

// 8 ---------------------------------------------------------------------------
ConditionKind random_kind(std::mt19937_64& rng, std::size_t history) {
  switch (rng() % 3) {
    case 0: return ConditionKind::single_frame();
    case 1: return ConditionKind::previous_latents(1 + rng() % history);
    default: return ConditionKind::full_clip();
  }
}

Outcome extension(const Paths& paths) {
  Outcome o;
  std::mt19937_64 rng(1008);
  std::size_t checked_frames = 0;
  for (int i = 0; i < 100; ++i) {
    SessionConfig config;
    config.motion.segment_frames = 1 + rng() % 4;
    config.steps = 1 + rng() % 4;
    config.seed = rng();
    const std::size_t side = 8 + 2 * (rng() % 5);
    auto s = start_session(random_image(rng, side, side), default_start_pose(side, side), config);
    const std::size_t segments = 2 + rng() % 3;
    for (std::size_t seg = 0; seg < segments; ++seg) {
      std::vector<ActionKey> keys(1 + rng() % 3);
      for (auto& k : keys) k = static_cast<ActionKey>(rng() % 9);
      const auto kind = random_kind(rng, s.frame_count());

      // Mask discipline on the input the extension will build.
      const std::size_t new_frames = keys.size() * config.motion.segment_frames;
      const auto in = build_hybrid_input(s, kind, new_frames);
      const std::size_t head = kind.type() == ConditionKind::Type::SingleFrame       ? 1
                               : kind.type() == ConditionKind::Type::PreviousLatents ? kind.frames()
                                                                                      : s.frame_count();
      o.require(in.head_frames == head && in.new_frames == new_frames, "head/new frame counts disagree with the kind");
      o.require(in.history_mask.frames() == head + new_frames, "mask frame count");
      for (std::size_t t = 0; t < in.history_mask.frames(); ++t)
        for (std::size_t y = 0; y < side; ++y)
          for (std::size_t x = 0; x < side; ++x)
            o.require(in.history_mask.test(t, y, x) == (t < head), "mask is not 1 on head, 0 on new frames");

      SessionState next;
      if (rng() % 2) {
        auto tail = random_volume(rng, {4, new_frames, side, side}, 0.0f, 1.0f);
        next = extend(s, keys, kind, ToyDenoiser(concat_frames(s.timeline, tail)));
        o.require(max_abs_diff(next.timeline.frames_slice(s.frame_count(), new_frames), tail) <= 1e-5,
                  "appended frames miss the toy target");
      } else {
        next = extend_toward_scene(s, keys, kind);
      }
      o.require(bit_equal(next.timeline.frames_slice(0, s.frame_count()), s.timeline), "history frames changed");
      o.require(next.trajectory.size() == next.frame_count(), "trajectory and timeline lengths differ");
      checked_frames += s.frame_count();
      s = std::move(next);
    }
  }

  // Scripted replay: two independent runs must export identical bytes.
  const std::vector<std::vector<ActionKey>> script{
      {ActionKey::W, ActionKey::W}, {ActionKey::Right}, {ActionKey::Space, ActionKey::A}, {ActionKey::Up, ActionKey::S}};
  const std::vector<ConditionKind> kinds{ConditionKind::single_frame(), ConditionKind::previous_latents(4),
                                         ConditionKind::full_clip(), ConditionKind::single_frame()};
  std::vector<fs::path> dirs;
  for (const char* name : {"replay_a", "replay_b"}) {
    std::mt19937_64 img_rng(77);
    SessionConfig config;
    config.seed = 2024;
    auto s = start_session(random_image(img_rng, 32, 32), default_start_pose(32, 32), config);
    for (std::size_t k = 0; k < script.size(); ++k) s = extend_toward_scene(s, script[k], kinds[k]);
    dirs.push_back(forgeline::testing::scratch_dir(paths.scratch, name));
    export_session(s, dirs.back());
  }
  for (const char* f : {"timeline.fglv", "trajectory.txt", "session.json"})
    o.require(read_file_bytes(dirs[0] / f) == read_file_bytes(dirs[1] / f), std::string("replay differs in ") + f);
  if (o.pass)
    o.detail = "100 sessions, " + std::to_string(checked_frames) + " history frames re-checked; replay export identical";
  return o;
}

// 9 ---------------------------------------------------------------------------
Outcome loop_closure() {
  Outcome o;
  std::mt19937_64 rng(1009);
  HarmonicFillDenoiser fill(16);
  for (std::size_t T : {3u, 9u, 33u}) {
    auto img = random_image(rng, 12, 12);
    auto loop = make_loop(img, T, fill, Schedule::uniform(6), rng());
    o.require(bit_equal(loop.frames_slice(0, 1), loop.frames_slice(T - 1, 1)), "first and last frame differ at T=" + std::to_string(T));
    o.require(bit_equal(loop.frames_slice(0, 1), encode(img)), "first frame is not the encoded image");
    o.require(decode_frame(loop, 0) == decode_frame(loop, T - 1), "decoded ends differ");
  }
  if (o.pass) o.detail = "T = 3, 9, 33 closed bit-exactly";
  return o;
}

// 10 --------------------------------------------------------------------------
Outcome annotation() {
  Outcome o;
  std::size_t valid = 0;
  for (int code = 0; code < 3125; ++code) {
    std::vector<int> scores;
    int rest = code;
    for (int k = 0; k < 5; ++k) {
      scores.push_back(1 + rest % 5);
      rest /= 5;
    }
    std::array<int, 6> mult{};
    for (int s : scores) ++mult[s];
    std::optional<int> oracle;
    for (int v = 1; v <= 5; ++v)
      if (mult[v] >= 4) oracle = v;
    const auto got = aggregate_annotation({"t", AestheticDimension::StructuralRationality, scores});
    o.require(got == oracle, "tuple " + std::to_string(code) + " disagrees with the oracle");
    valid += oracle.has_value();
  }
  auto make = [](int exact, int off1, int off2) {
    std::vector<std::pair<int, int>> v;
    for (int i = 0; i < exact; ++i) v.push_back({4, 4});
    for (int i = 0; i < off1; ++i) v.push_back({4, 3});
    for (int i = 0; i < off2; ++i) v.push_back({4, 2});
    return v;
  };
  const auto boundary = acceptance_check(make(70, 25, 5), 1.0, 1);
  o.require(boundary.sampled == 100 && boundary.exact_fraction == 0.70 && boundary.within_one_fraction == 0.95,
            "boundary fractions not 0.70 / 0.95");
  o.require(boundary.pass, "0.70 / 0.95 should pass");
  o.require(!acceptance_check(make(69, 31, 0), 1.0, 1).pass, "0.69 exact should fail");
  o.require(!acceptance_check(make(70, 24, 6), 1.0, 1).pass, "0.94 within one should fail");
  o.require(acceptance_check(make(40, 0, 0)).pass, "identical pairs should pass");
  if (o.pass) o.detail = "3125 tuples (" + std::to_string(valid) + " valid); 0.70/0.95 pass, 0.69 fails";
  return o;
}

// 11 --------------------------------------------------------------------------
Outcome caption_sampling() {
  Outcome o;
  CaptionSet set;
  set.short_text = "short";
  set.medium = "medium";
  set.detailed = "detailed";
  set.comprehensive = "comprehensive";
  std::mt19937_64 rng(1011);
  std::size_t hits = 0;
  const std::size_t n = 100000;
  for (std::size_t i = 0; i < n; ++i) hits += sample_caption(set, rng) == "comprehensive";
  const double frac = double(hits) / double(n);
  o.require(frac >= 0.69 && frac <= 0.71, "comprehensive fraction " + fmt_double(frac));
  if (o.pass) o.detail = "comprehensive fraction " + std::to_string(frac);
  return o;
}

// 12 --------------------------------------------------------------------------
Outcome curation_fixtures(const Paths& paths) {
  Outcome o;
  std::vector<Rgba8Image> video;
  for (std::size_t i = 0; i < 140; ++i) {
    if (i < 40) video.push_back(solid_image(24, 24, 200, 40, 40));
    else if (i < 90) video.push_back(solid_image(24, 24, 40, 200, 40));
    else video.push_back(solid_image(24, 24, 40, 40, 200));
  }
  const auto clips = split_scenes(video);
  std::vector<std::size_t> cuts;
  for (std::size_t k = 1; k < clips.size(); ++k) cuts.push_back(clips[k].start);
  o.require(cuts == std::vector<std::size_t>{40, 90}, "cuts are not exactly {40, 90}");

  const auto corpus = forgeline::testing::scratch_dir(paths.scratch, "fixture_corpus");
  generate_fixture_corpus(corpus, 0);
  CurationConfig config;
  const auto run = run_curation(corpus, config, 0);
  o.require(run.images.size() + 20 == 60, "fixture does not hold 60 assets");
  std::size_t bronze = 0, gold = 0, premium = 0;
  for (const auto& r : run.images) {
    const Tier t = r.tier.value_or(Tier::Rejected);
    bronze += t >= Tier::Bronze;
    gold += t >= Tier::Gold;
    premium += t == Tier::Premium;
  }
  o.require(premium <= gold && gold <= bronze, "tier funnel is not monotone");

  std::size_t two = 0, three = 0;
  for (std::size_t i = 0; i < run.clips.size(); ++i)
    if (run.clip_selected[i]) {
      two += run.clips[i].style == Style::TwoD;
      three += run.clips[i].style == Style::ThreeD;
    }
  const double ratio = (two + three) ? double(two) / double(two + three) : 0.0;
  o.require(ratio >= 0.48 && ratio <= 0.52, "2D share " + fmt_double(ratio));

  const auto rerun = run_curation(corpus, config, 0);
  o.require(rerun.manifest_lines == run.manifest_lines && rerun.summary_json == run.summary_json, "rerun differs");
  const auto out = paths.scratch / "curation_out";
  write_curation_outputs(run, out);
  if (!fs::exists(paths.golden)) {
    o.require(false, "golden manifest missing at " + paths.golden.string());
  } else {
    o.require(read_file_bytes(out / "manifest.jsonl") == read_file_bytes(paths.golden), "manifest differs from the golden file");
  }
  if (o.pass)
    o.detail = "cuts {40, 90}; funnel " + std::to_string(bronze) + " >= " + std::to_string(gold) + " >= " +
               std::to_string(premium) + "; 2D share " + fmt_double(ratio) + "; manifest matches golden";
  return o;
}

// 13 --------------------------------------------------------------------------
Outcome extension_budget() {
  Outcome o;
  std::mt19937_64 rng(1013);
  SessionConfig config;
  config.motion.segment_frames = 8;
  config.steps = 8;
  auto s = start_session(random_image(rng, 64, 64), default_start_pose(64, 64), config);
  const std::vector<ActionKey> key{ActionKey::W};
  auto target = concat_frames(s.timeline, random_volume(rng, {4, 8, 64, 64}, 0.0f, 1.0f));
  ToyDenoiser toy(target);

  auto t0 = Clock::now();
  auto next = extend(s, key, ConditionKind::single_frame(), toy);
  const double toy_s = seconds_since(t0);
  t0 = Clock::now();
  auto scene = extend_toward_scene(s, key, ConditionKind::single_frame());
  const double scene_s = seconds_since(t0);
  o.require(next.frame_count() == 9 && scene.frame_count() == 9, "extension did not append 8 frames");
  o.require(toy_s < 1.0, "toy extension took " + fmt_double(toy_s) + " s");
  o.require(scene_s < 1.0, "scene extension took " + fmt_double(scene_s) + " s");
  if (o.pass) o.detail = "toy " + fmt_double(toy_s) + " s, scene preview " + fmt_double(scene_s) + " s";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forgeline acceptance checks"};
  Paths paths;
  paths.golden = "tests/golden/manifest.jsonl";
  paths.scratch = fs::temp_directory_path() / "forgeline_acceptance";
  app.add_option("--golden", paths.golden, "committed golden manifest");
  app.add_option("--scratch", paths.scratch, "scratch directory");
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(paths.scratch);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"toy denoiser exactness", toy_exactness},
      {"inpaint preservation", inpaint_preservation},
      {"seamless", seamless_checks},
      {"tile planning", tile_planning},
      {"tiled idempotence", tiled_idempotence},
      {"pluecker invariants", pluecker_invariants},
      {"camera algebra", camera_algebra},
      {"extension", [&] { return extension(paths); }},
      {"loop closure", loop_closure},
      {"annotation aggregation", annotation},
      {"caption sampling", caption_sampling},
      {"curation fixtures", [&] { return curation_fixtures(paths); }},
      {"extension budget", extension_budget},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw ") + e.what();
    }
    failed += !o.pass;
    std::printf("criterion %zu: %s  %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
