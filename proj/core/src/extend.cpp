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

#include "forgeline/extend.hpp"

#include <charconv>
#include <nlohmann/json.hpp>

#include "forgeline/codec.hpp"
#include "forgeline/container.hpp"
#include "forgeline/error.hpp"
#include "forgeline/noise.hpp"

namespace forgeline {

using nlohmann::json;

ConditionKind ConditionKind::parse(std::string_view text) {
  if (text == "single") return single_frame();
  if (text == "full") return full_clip();
  constexpr std::string_view prefix = "previous:";
  if (text.substr(0, prefix.size()) == prefix) {
    const auto digits = text.substr(prefix.size());
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && n >= 1) return previous_latents(n);
  }
  throw Error(ErrorCode::InvalidKind, "unknown condition kind '" + std::string(text) + "'");
}

std::string ConditionKind::to_string() const {
  switch (type_) {
    case Type::SingleFrame: return "single";
    case Type::FullClip: return "full";
    case Type::PreviousLatents: return "previous:" + std::to_string(frames_);
  }
  return "single";
}

std::size_t ConditionKind::head_length(std::size_t history) const {
  if (history == 0) throw Error(ErrorCode::InvalidKind, "session has no history");
  switch (type_) {
    case Type::SingleFrame: return 1;
    case Type::FullClip: return history;
    case Type::PreviousLatents:
      if (frames_ == 0 || frames_ > history) {
        throw Error(ErrorCode::InvalidKind, "previous:" + std::to_string(frames_) + " exceeds history of " +
                                                std::to_string(history) + " frames");
      }
      return frames_;
  }
  return 1;
}

void SessionConfig::validate() const {
  motion.validate();
  if (steps == 0) throw Error(ErrorCode::InvalidSchedule, "steps must be >= 1");
  if (compression.spatial_factor == 0 || compression.temporal_factor == 0) {
    throw Error(ErrorCode::NonDivisibleShape, "compression factors must be >= 1");
  }
}

SessionState start_session(const Rgba8Image& image, const CameraPose& pose, const SessionConfig& config) {
  if (image.empty()) throw Error(ErrorCode::EmptyImage, "start image has zero size");
  config.validate();
  return SessionState{encode(image), CameraTrajectory{pose}, config, {}};
}

CameraTrajectory plan_extension_poses(const SessionState& session, std::span<const ActionKey> keys) {
  CameraTrajectory folded = fold_actions(session.trajectory.back(), keys, session.config.motion);
  folded.erase(folded.begin());
  return folded;
}

HybridInput build_hybrid_input(const SessionState& session, const ConditionKind& kind, std::size_t new_frames) {
  const std::size_t history = session.frame_count();
  const std::size_t head = kind.head_length(history);
  const std::size_t first = history - head;
  const LatentVolume head_latents = session.timeline.frames_slice(first, head);
  const LatentVolume blank(Shape4{head_latents.channels(), new_frames, head_latents.height(), head_latents.width()});

  HybridInput input;
  input.latents = concat_frames(head_latents, blank);
  input.history_mask = BinaryMask(head + new_frames, head_latents.height(), head_latents.width());
  for (std::size_t t = 0; t < head; ++t)
    for (std::size_t h = 0; h < head_latents.height(); ++h)
      for (std::size_t w = 0; w < head_latents.width(); ++w) input.history_mask.set(t, h, w, true);
  input.first_frame = first;
  input.head_frames = head;
  input.new_frames = new_frames;
  return input;
}

BinaryMask history_to_inpaint_mask(const BinaryMask& history) { return history.inverted(); }

SessionState extend(const SessionState& session, std::span<const ActionKey> keys, const ConditionKind& kind,
                    const Denoiser& denoiser) {
  if (keys.empty()) throw Error(ErrorCode::EmptyKeyList, "extension needs at least one key");
  const SessionConfig& config = session.config;
  const CameraTrajectory poses = plan_extension_poses(session, keys);
  const HybridInput input = build_hybrid_input(session, kind, poses.size());

  ConditionBundle cond;
  cond.origin = Offset3{input.first_frame, 0, 0};
  cond.pluecker = compress_actions(pluecker_stack(poses, input.latents.height(), input.latents.width()),
                                   config.compression);

  const std::uint64_t seed = sub_seed(config.seed, session.segment_log.size());
  const LatentVolume denoised = sample_inpaint(denoiser, Schedule::uniform(config.steps), input.latents,
                                               history_to_inpaint_mask(input.history_mask), seed, cond);

  SessionState next = session;
  next.timeline = concat_frames(session.timeline, denoised.frames_slice(input.head_frames, input.new_frames));
  next.trajectory.insert(next.trajectory.end(), poses.begin(), poses.end());
  next.segment_log.push_back(SegmentRecord{std::vector<ActionKey>(keys.begin(), keys.end()), session.frame_count(),
                                           next.frame_count(), kind});
  return next;
}

LatentVolume make_loop(const Rgba8Image& image, std::size_t total_frames, const Denoiser& denoiser,
                       const Schedule& schedule, std::uint64_t seed) {
  if (total_frames < 3) {
    throw Error(ErrorCode::TooFewFrames, "loop needs at least 3 frames, got " + std::to_string(total_frames));
  }
  if (image.empty()) throw Error(ErrorCode::EmptyImage, "loop image has zero size");
  const LatentVolume still = encode(image);
  LatentVolume known(Shape4{4, total_frames, still.height(), still.width()});
  BinaryMask mask(total_frames, still.height(), still.width(), 1);
  for (std::size_t t : {std::size_t{0}, total_frames - 1}) {
    for (std::size_t c = 0; c < 4; ++c)
      for (std::size_t h = 0; h < still.height(); ++h)
        for (std::size_t w = 0; w < still.width(); ++w) known.at(c, t, h, w) = still.at(c, 0, h, w);
    for (std::size_t h = 0; h < still.height(); ++h)
      for (std::size_t w = 0; w < still.width(); ++w) mask.set(t, h, w, false);
  }
  return sample_inpaint(denoiser, schedule, known, mask, seed);
}

namespace {

json motion_to_json(const MotionParams& m) {
  return json{{"speed", m.speed},
              {"yaw_rate", m.yaw_rate},
              {"pitch_rate", m.pitch_rate},
              {"jump_height", m.jump_height},
              {"segment_frames", m.segment_frames}};
}

MotionParams motion_from_json(const json& j) {
  MotionParams m;
  m.speed = j.at("speed").get<double>();
  m.yaw_rate = j.at("yaw_rate").get<double>();
  m.pitch_rate = j.at("pitch_rate").get<double>();
  m.jump_height = j.at("jump_height").get<double>();
  m.segment_frames = j.at("segment_frames").get<std::size_t>();
  return m;
}

}  // namespace

void export_session(const SessionState& session, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());

  json segments = json::array();
  for (const auto& seg : session.segment_log) {
    json keys = json::array();
    for (ActionKey k : seg.keys) keys.push_back(std::string(key_name(k)));
    segments.push_back(json{{"keys", keys},
                            {"first_frame", seg.first_frame},
                            {"end_frame", seg.end_frame},
                            {"kind", seg.kind.to_string()}});
  }
  const auto& c = session.config;
  const json manifest{
      {"format", "forgeline-session/1"},
      {"frames", session.frame_count()},
      {"height", session.timeline.height()},
      {"width", session.timeline.width()},
      {"config",
       {{"motion", motion_to_json(c.motion)},
        {"steps", c.steps},
        {"seed", c.seed},
        {"compression",
         {{"spatial_factor", c.compression.spatial_factor},
          {"temporal_factor", c.compression.temporal_factor},
          {"pad", c.compression.pad},
          {"zero_init", c.compression.mode == EncoderMode::ZeroInit}}}}},
      {"segments", segments}};

  save_volume(session.timeline, dir / "timeline.fglv");
  save_trajectory(session.trajectory, dir / "trajectory.txt");
  const std::string text = manifest.dump(2) + "\n";
  write_file_bytes(dir / "session.json", std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

SessionState import_session(const std::filesystem::path& dir) {
  const auto bytes = read_file_bytes(dir / "session.json");
  json manifest;
  try {
    manifest = json::parse(bytes.begin(), bytes.end());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadConfig, "session.json: " + std::string(e.what()));
  }

  SessionState session;
  try {
    const json& c = manifest.at("config");
    session.config.motion = motion_from_json(c.at("motion"));
    session.config.steps = c.at("steps").get<std::size_t>();
    session.config.seed = c.at("seed").get<std::uint64_t>();
    const json& comp = c.at("compression");
    session.config.compression.spatial_factor = comp.at("spatial_factor").get<std::size_t>();
    session.config.compression.temporal_factor = comp.at("temporal_factor").get<std::size_t>();
    session.config.compression.pad = comp.at("pad").get<bool>();
    session.config.compression.mode = comp.at("zero_init").get<bool>() ? EncoderMode::ZeroInit : EncoderMode::AveragePool;
    for (const json& seg : manifest.at("segments")) {
      SegmentRecord rec;
      for (const json& k : seg.at("keys")) {
        const auto key = parse_key(k.get<std::string>());
        if (!key) throw Error(ErrorCode::UnknownKey, "session.json names unknown key " + k.dump());
        rec.keys.push_back(*key);
      }
      rec.first_frame = seg.at("first_frame").get<std::size_t>();
      rec.end_frame = seg.at("end_frame").get<std::size_t>();
      rec.kind = ConditionKind::parse(seg.at("kind").get<std::string>());
      session.segment_log.push_back(std::move(rec));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadConfig, "session.json: " + std::string(e.what()));
  }
  session.config.validate();

  session.timeline = load_volume(dir / "timeline.fglv");
  session.trajectory = load_trajectory(dir / "trajectory.txt");
  if (session.trajectory.size() != session.timeline.frames()) {
    throw Error(ErrorCode::DimMismatch, "trajectory has " + std::to_string(session.trajectory.size()) +
                                            " poses but the timeline has " +
                                            std::to_string(session.timeline.frames()) + " frames");
  }
  return session;
}

}  // namespace forgeline
