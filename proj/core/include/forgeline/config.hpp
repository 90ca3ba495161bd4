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
#include <string>
#include <string_view>

#include "forgeline/camera.hpp"
#include "forgeline/curation.hpp"
#include "forgeline/extend.hpp"
#include "forgeline/tiling.hpp"
#include "forgeline/video_analysis.hpp"

namespace forgeline {

struct CurationConfig {
  TierThresholds tiers;
  SceneParams scenes;
  FlowParams flow;
  double motion_threshold = 1.0;  // theta_grad
  double luminance_min = 0.5;
  double fps = 24.0;
  ClipCaptionWeights clip_caption_weights = kDefaultClipCaptionWeights;
  double inspection_rate = kDefaultInspectionRate;
  std::size_t threads = 1;
};

struct PathConfig {
  std::filesystem::path corpus;
  std::filesystem::path output;
};

/// Everything a run can be parameterized by. Loaded from JSON; unknown keys
/// anywhere in the document are rejected with BadConfig.
struct RunConfig {
  std::uint64_t seed = 0;
  std::size_t steps = 8;
  CurationConfig curation;
  TileParams tiling;
  MotionParams motion;
  ActionCompression compression;
  std::string condition = "single";
  std::size_t seam_band = 16;
  std::string seam_direction = "horizontal";
  std::size_t loop_frames = 9;
  std::size_t upscale_factor = 2;
  PathConfig paths;

  void validate() const;
  SessionConfig session() const;
};

RunConfig parse_run_config(std::string_view json_text);
RunConfig load_run_config(const std::filesystem::path& path);
/// Canonical pretty JSON of the fully resolved config.
std::string dump_run_config(const RunConfig& config);

}  // namespace forgeline
