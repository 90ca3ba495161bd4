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

#include "forgeline/config.hpp"

#include <functional>
#include <map>

#include <nlohmann/json.hpp>

#include "forgeline/container.hpp"
#include "forgeline/error.hpp"
#include "forgeline/seamless.hpp"

namespace forgeline {

using nlohmann::json;

namespace {

using FieldHandler = std::function<void(const json&)>;

void visit_object(const json& node, const std::string& where, const std::map<std::string, FieldHandler>& handlers) {
  if (!node.is_object()) throw Error(ErrorCode::BadConfig, where.empty() ? "config must be an object" : where + " must be an object");
  for (const auto& [key, value] : node.items()) {
    const std::string path = where.empty() ? key : where + "." + key;
    const auto it = handlers.find(key);
    if (it == handlers.end()) throw Error(ErrorCode::BadConfig, "unknown key '" + path + "'");
    try {
      it->second(value);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::BadConfig, "field '" + path + "': " + e.what());
    }
  }
}

template <typename T>
FieldHandler into(T& slot) {
  return [&slot](const json& v) { slot = v.get<T>(); };
}

FieldHandler into_extent(Extent3& slot) {
  return [&slot](const json& v) {
    const auto values = v.get<std::vector<std::size_t>>();
    if (values.size() != 3) throw Error(ErrorCode::BadConfig, "extent needs three values [t, h, w]");
    slot = Extent3{values[0], values[1], values[2]};
  };
}

json extent_json(const Extent3& e) { return json::array({e.t, e.h, e.w}); }

}  // namespace

void RunConfig::validate() const {
  if (steps == 0) throw Error(ErrorCode::BadConfig, "field 'steps' must be positive");
  motion.validate();
  ConditionKind::parse(condition);
  if (!parse_seam_direction(seam_direction)) {
    throw Error(ErrorCode::BadConfig, "field 'seamless.direction': unknown direction '" + seam_direction + "'");
  }
  if (compression.spatial_factor == 0 || compression.temporal_factor == 0) {
    throw Error(ErrorCode::BadConfig, "field 'compression': factors must be positive");
  }
  if (tiling.threads == 0) throw Error(ErrorCode::BadConfig, "field 'tiling.threads' must be positive");
  if (curation.threads == 0) throw Error(ErrorCode::BadConfig, "field 'curation.threads' must be positive");
  if (curation.fps <= 0.0) throw Error(ErrorCode::BadConfig, "field 'curation.fps' must be positive");
  if (curation.scenes.min_len == 0) throw Error(ErrorCode::BadConfig, "field 'curation.scene_min_len' must be positive");
  if (curation.flow.block == 0 || curation.flow.radius < 0) {
    throw Error(ErrorCode::BadConfig, "field 'curation.flow' needs block > 0 and radius >= 0");
  }
  if (!(curation.inspection_rate > 0.0) || curation.inspection_rate > 1.0) {
    throw Error(ErrorCode::BadConfig, "field 'curation.inspection_rate' must lie in (0, 1]");
  }
}

SessionConfig RunConfig::session() const {
  SessionConfig s;
  s.motion = motion;
  s.steps = steps;
  s.seed = seed;
  s.compression = compression;
  return s;
}

RunConfig parse_run_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::BadConfig, std::string("config is not valid JSON: ") + e.what());
  }

  RunConfig c;
  std::string compression_mode = "average";
  std::string corpus, output;
  auto& cur = c.curation;

  const std::map<std::string, FieldHandler> thresholds{
      {"style", into(cur.tiers.style)},
      {"clarity", into(cur.tiers.clarity)},
      {"aesthetic", into(cur.tiers.aesthetic)},
      {"min_side", into(cur.tiers.min_side)},
      {"cut", into(cur.scenes.cut_threshold)},
      {"grad", into(cur.motion_threshold)},
      {"luminance", into(cur.luminance_min)},
  };
  const std::map<std::string, FieldHandler> flow{
      {"block", into(cur.flow.block)},
      {"radius", into(cur.flow.radius)},
  };
  const std::map<std::string, FieldHandler> curation{
      {"thresholds", [&](const json& v) { visit_object(v, "curation.thresholds", thresholds); }},
      {"flow", [&](const json& v) { visit_object(v, "curation.flow", flow); }},
      {"scene_min_len", into(cur.scenes.min_len)},
      {"histogram_bins", into(cur.scenes.bins)},
      {"fps", into(cur.fps)},
      {"clip_caption_weights", into(cur.clip_caption_weights)},
      {"inspection_rate", into(cur.inspection_rate)},
      {"threads", into(cur.threads)},
  };
  const std::map<std::string, FieldHandler> tiling{
      {"tile", into_extent(c.tiling.tile)},
      {"overlap", into_extent(c.tiling.overlap)},
      {"feather", into(c.tiling.feather)},
      {"threads", into(c.tiling.threads)},
      {"scale", into(c.upscale_factor)},
  };
  const std::map<std::string, FieldHandler> motion{
      {"speed", into(c.motion.speed)},
      {"yaw_rate", into(c.motion.yaw_rate)},
      {"pitch_rate", into(c.motion.pitch_rate)},
      {"jump_height", into(c.motion.jump_height)},
      {"segment_frames", into(c.motion.segment_frames)},
  };
  const std::map<std::string, FieldHandler> compression{
      {"spatial_factor", into(c.compression.spatial_factor)},
      {"temporal_factor", into(c.compression.temporal_factor)},
      {"pad", into(c.compression.pad)},
      {"mode", into(compression_mode)},
  };
  const std::map<std::string, FieldHandler> seamless{
      {"band", into(c.seam_band)},
      {"direction", into(c.seam_direction)},
  };
  const std::map<std::string, FieldHandler> paths{
      {"corpus", into(corpus)},
      {"output", into(output)},
  };
  const std::map<std::string, FieldHandler> root{
      {"seed", into(c.seed)},
      {"steps", into(c.steps)},
      {"condition", into(c.condition)},
      {"loop_frames", into(c.loop_frames)},
      {"curation", [&](const json& v) { visit_object(v, "curation", curation); }},
      {"tiling", [&](const json& v) { visit_object(v, "tiling", tiling); }},
      {"motion", [&](const json& v) { visit_object(v, "motion", motion); }},
      {"compression", [&](const json& v) { visit_object(v, "compression", compression); }},
      {"seamless", [&](const json& v) { visit_object(v, "seamless", seamless); }},
      {"paths", [&](const json& v) { visit_object(v, "paths", paths); }},
  };
  visit_object(doc, "", root);

  if (compression_mode == "average") {
    c.compression.mode = EncoderMode::AveragePool;
  } else if (compression_mode == "zero") {
    c.compression.mode = EncoderMode::ZeroInit;
  } else {
    throw Error(ErrorCode::BadConfig, "field 'compression.mode': expected 'average' or 'zero'");
  }
  c.paths.corpus = corpus;
  c.paths.output = output;
  c.validate();
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  const auto bytes = read_file_bytes(path);
  return parse_run_config(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

std::string dump_run_config(const RunConfig& c) {
  const auto& cur = c.curation;
  json doc{
      {"seed", c.seed},
      {"steps", c.steps},
      {"condition", c.condition},
      {"loop_frames", c.loop_frames},
      {"curation",
       {{"thresholds",
         {{"style", cur.tiers.style},
          {"clarity", cur.tiers.clarity},
          {"aesthetic", cur.tiers.aesthetic},
          {"min_side", cur.tiers.min_side},
          {"cut", cur.scenes.cut_threshold},
          {"grad", cur.motion_threshold},
          {"luminance", cur.luminance_min}}},
        {"flow", {{"block", cur.flow.block}, {"radius", cur.flow.radius}}},
        {"scene_min_len", cur.scenes.min_len},
        {"histogram_bins", cur.scenes.bins},
        {"fps", cur.fps},
        {"clip_caption_weights", cur.clip_caption_weights},
        {"inspection_rate", cur.inspection_rate},
        {"threads", cur.threads}}},
      {"tiling",
       {{"tile", extent_json(c.tiling.tile)},
        {"overlap", extent_json(c.tiling.overlap)},
        {"feather", c.tiling.feather},
        {"threads", c.tiling.threads},
        {"scale", c.upscale_factor}}},
      {"motion",
       {{"speed", c.motion.speed},
        {"yaw_rate", c.motion.yaw_rate},
        {"pitch_rate", c.motion.pitch_rate},
        {"jump_height", c.motion.jump_height},
        {"segment_frames", c.motion.segment_frames}}},
      {"compression",
       {{"spatial_factor", c.compression.spatial_factor},
        {"temporal_factor", c.compression.temporal_factor},
        {"pad", c.compression.pad},
        {"mode", c.compression.mode == EncoderMode::AveragePool ? "average" : "zero"}}},
      {"seamless", {{"band", c.seam_band}, {"direction", c.seam_direction}}},
      {"paths", {{"corpus", c.paths.corpus.string()}, {"output", c.paths.output.string()}}},
  };
  return doc.dump(2);
}

}  // namespace forgeline
