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

// forgeline: command-line front end.
//
// Exit codes: 0 success, 1 validation error, 2 I/O error.

#include <csignal>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "forgeline/camera.hpp"
#include "forgeline/codec.hpp"
#include "forgeline/config.hpp"
#include "forgeline/container.hpp"
#include "forgeline/corpus.hpp"
#include "forgeline/denoise.hpp"
#include "forgeline/error.hpp"
#include "forgeline/extend.hpp"
#include "forgeline/png_io.hpp"
#include "forgeline/preview.hpp"
#include "forgeline/seamless.hpp"
#include "forgeline/service.hpp"
#include "forgeline/tiling.hpp"

// After Eigen: <resolv.h> (pulled in by httplib) defines a `_res` macro.
#include <httplib.h>

namespace fs = std::filesystem;
using namespace forgeline;

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> steps;
};

RunConfig resolve(const Overrides& o) {
  RunConfig c = o.config_path.empty() ? RunConfig{} : load_run_config(o.config_path);
  if (o.seed) c.seed = *o.seed;
  if (o.steps) c.steps = *o.steps;
  return c;
}

void log_config(const RunConfig& c) { std::cerr << "forgeline: resolved config\n" << dump_run_config(c) << "\n"; }

std::optional<Extent3> parse_extent(const std::string& text) {
  std::vector<std::size_t> v;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      v.push_back(std::stoul(part, &used));
      if (used != part.size()) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (v.size() != 3) return std::nullopt;
  return Extent3{v[0], v[1], v[2]};
}

LatentVolume load_any(const fs::path& path) {
  if (path.extension() == ".png") return encode(read_png(path));
  return load_volume(path);
}

void save_any(const LatentVolume& v, const fs::path& path) {
  if (path.extension() == ".png") {
    write_png(decode(v), path);
  } else {
    save_volume(v, path);
  }
}

void ensure_parent(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
}

int run_serve(const RunConfig& config, const std::string& host, std::uint16_t port, std::optional<std::uint16_t> http_port,
              const fs::path& export_root, const std::string& static_dir) {
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  SessionService service(ServiceOptions{config, export_root, kSessionQueueDepth});
  TcpServer tcp(service, port, host);
  std::cerr << "forgeline: serving on " << host << ":" << tcp.port() << "\n";

  httplib::Server http;
  std::jthread http_thread;
  if (http_port) {
    http.Post("/steer", [&](const httplib::Request& req, httplib::Response& res) {
      res.set_content(service.submit_json(req.body).get(), "application/json");
    });
    if (!static_dir.empty() && !http.set_mount_point("/", static_dir)) {
      throw Error(ErrorCode::IoError, "static directory '" + static_dir + "' is not readable");
    }
    if (!http.bind_to_port(host, *http_port)) {
      throw Error(ErrorCode::IoError, "cannot bind http port " + std::to_string(*http_port));
    }
    std::cerr << "forgeline: http bridge on " << host << ":" << *http_port << "\n";
    http_thread = std::jthread([&] { http.listen_after_bind(); });
  }
  std::jthread tcp_thread([&] { tcp.run(); });

  int sig = 0;
  sigwait(&signals, &sig);
  std::cerr << "forgeline: shutting down\n";
  tcp.stop();
  if (http_port) http.stop();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forgeline: seamless textures, tiled upscaling, camera-steered extension and corpus curation"};
  app.require_subcommand(1);
  Overrides o;
  app.add_option("--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", o.seed, "override the config seed");
  app.add_option("--steps", o.steps, "override the number of sampler steps");

  // curate
  auto* curate = app.add_subcommand("curate", "score, tier and balance a corpus");
  std::string corpus, curate_out;
  std::optional<std::size_t> curate_threads;
  curate->add_option("--corpus", corpus, "corpus root (images/, clips/)");
  curate->add_option("--out", curate_out, "output directory for manifest.jsonl and summary.json");
  curate->add_option("--threads", curate_threads, "worker threads");

  // fixture
  auto* fixture = app.add_subcommand("fixture", "write the 60-asset fixture corpus");
  std::string fixture_out;
  fixture->add_option("out", fixture_out, "destination directory")->required();

  // seamless
  auto* seamless = app.add_subcommand("seamless", "make an image wrap-tileable");
  std::string seam_in, seam_out;
  std::optional<std::string> seam_direction;
  std::optional<std::size_t> seam_band;
  seamless->add_option("in", seam_in, "input PNG")->required();
  seamless->add_option("out", seam_out, "output PNG")->required();
  seamless->add_option("--direction", seam_direction, "horizontal, vertical or both");
  seamless->add_option("--band", seam_band, "seam band width in pixels");

  // upscale
  auto* upscale = app.add_subcommand("upscale", "tiled super-resolution of a volume or PNG");
  std::string up_in, up_out;
  std::optional<std::size_t> up_scale, up_threads;
  std::optional<std::string> up_tile, up_overlap;
  bool up_feather = false;
  upscale->add_option("in", up_in, "input .fglv or .png")->required();
  upscale->add_option("out", up_out, "output .fglv or .png")->required();
  upscale->add_option("--scale", up_scale, "2 or 4");
  upscale->add_option("--tile", up_tile, "tile extent t,h,w (output resolution)");
  upscale->add_option("--overlap", up_overlap, "overlap extent t,h,w");
  upscale->add_option("--threads", up_threads, "tile worker threads");
  upscale->add_flag("--feather", up_feather, "linear ramps instead of plain averaging in overlaps");

  // loop
  auto* loop = app.add_subcommand("loop", "animate an image into a closed loop");
  std::string loop_in, loop_out;
  std::optional<std::size_t> loop_frames;
  std::string loop_frames_dir;
  loop->add_option("in", loop_in, "input PNG")->required();
  loop->add_option("out", loop_out, "output .fglv")->required();
  loop->add_option("--frames", loop_frames, "total frames T (>= 3)");
  loop->add_option("--png-dir", loop_frames_dir, "also write frame_NNNN.png files here");

  // start
  auto* start = app.add_subcommand("start", "start a steering session from an image");
  std::string start_in, start_dir;
  start->add_option("in", start_in, "input PNG")->required();
  start->add_option("session-dir", start_dir, "session directory to create")->required();

  // extend
  auto* extend_cmd = app.add_subcommand("extend", "extend a session along a key sequence");
  std::string ext_dir, ext_keys;
  std::optional<std::string> ext_condition;
  extend_cmd->add_option("session-dir", ext_dir, "session directory")->required();
  extend_cmd->add_option("--keys", ext_keys, "keys such as W,W,Right")->required();
  extend_cmd->add_option("--condition", ext_condition, "single, full or previous:N");

  // pluecker
  auto* pluecker = app.add_subcommand("pluecker", "per-pixel ray embedding of a trajectory");
  std::string pl_traj, pl_out;
  std::optional<std::size_t> pl_h, pl_w;
  bool pl_compress = false;
  pluecker->add_option("trajectory", pl_traj, "trajectory text file")->required();
  pluecker->add_option("out", pl_out, "output .fglv")->required();
  pluecker->add_option("--height", pl_h, "grid height (default 2*cy)");
  pluecker->add_option("--width", pl_w, "grid width (default 2*cx)");
  pluecker->add_flag("--compress", pl_compress, "apply the action compression contract");

  // serve
  auto* serve = app.add_subcommand("serve", "run the steering session service");
  std::uint16_t port = 7878;
  std::optional<std::uint16_t> http_port;
  std::string host = "127.0.0.1", export_root = "sessions", static_dir;
  serve->add_option("--port", port, "framed TCP protocol port");
  serve->add_option("--host", host, "listen address");
  serve->add_option("--http-port", http_port, "optional HTTP bridge port (POST /steer)");
  serve->add_option("--static", static_dir, "directory served by the HTTP bridge");
  serve->add_option("--export-root", export_root, "where exported sessions are written");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    RunConfig config = resolve(o);

    if (*curate) {
      if (!corpus.empty()) config.paths.corpus = corpus;
      if (!curate_out.empty()) config.paths.output = curate_out;
      if (curate_threads) config.curation.threads = *curate_threads;
      config.validate();
      if (config.paths.corpus.empty() || config.paths.output.empty()) {
        throw Error(ErrorCode::BadConfig, "field 'paths.corpus' and 'paths.output' are required");
      }
      log_config(config);
      const CurationRun run = run_curation(config.paths.corpus, config.curation, config.seed);
      write_curation_outputs(run, config.paths.output);
      std::cerr << "forgeline: " << run.manifest_lines.size() << " manifest records\n";
    } else if (*fixture) {
      log_config(config);
      generate_fixture_corpus(fixture_out, config.seed);
    } else if (*seamless) {
      if (seam_direction) config.seam_direction = *seam_direction;
      if (seam_band) config.seam_band = *seam_band;
      config.validate();
      log_config(config);
      SeamSpec spec;
      spec.direction = *parse_seam_direction(config.seam_direction);
      spec.band_width = config.seam_band;
      const Rgba8Image image = read_png(seam_in);
      const HarmonicFillDenoiser prior;
      const Rgba8Image out = make_seamless(image, spec, prior, Schedule::uniform(config.steps), config.seed);
      ensure_parent(seam_out);
      write_png(out, seam_out);
    } else if (*upscale) {
      if (up_scale) config.upscale_factor = *up_scale;
      if (up_threads) config.tiling.threads = *up_threads;
      if (up_feather) config.tiling.feather = true;
      if (up_tile) {
        const auto e = parse_extent(*up_tile);
        if (!e) throw Error(ErrorCode::BadConfig, "field 'tiling.tile': expected t,h,w");
        config.tiling.tile = *e;
      }
      if (up_overlap) {
        const auto e = parse_extent(*up_overlap);
        if (!e) throw Error(ErrorCode::BadConfig, "field 'tiling.overlap': expected t,h,w");
        config.tiling.overlap = *e;
      }
      config.validate();
      log_config(config);
      const LatentVolume low = load_any(up_in);
      const ConditionEchoDenoiser echo;
      const LatentVolume high =
          upscale_video(low, config.upscale_factor, echo, Schedule::uniform(config.steps), config.tiling, config.seed);
      ensure_parent(up_out);
      save_any(high, up_out);
    } else if (*loop) {
      if (loop_frames) config.loop_frames = *loop_frames;
      config.validate();
      log_config(config);
      const Rgba8Image image = read_png(loop_in);
      const HarmonicFillDenoiser prior;
      const LatentVolume clip = make_loop(image, config.loop_frames, prior, Schedule::uniform(config.steps), config.seed);
      ensure_parent(loop_out);
      save_volume(clip, loop_out);
      if (!loop_frames_dir.empty()) {
        fs::create_directories(loop_frames_dir);
        for (std::size_t t = 0; t < clip.frames(); ++t) {
          write_png(decode_frame(clip, t), fs::path(loop_frames_dir) / fmt::format("frame_{:04}.png", t));
        }
      }
    } else if (*start) {
      config.validate();
      log_config(config);
      const Rgba8Image image = read_png(start_in);
      const SessionState session =
          start_session(image, default_start_pose(image.height(), image.width()), config.session());
      export_session(session, start_dir);
      std::cout << start_dir << "\n";
    } else if (*extend_cmd) {
      if (ext_condition) config.condition = *ext_condition;
      config.validate();
      log_config(config);
      const auto keys = parse_keys(ext_keys);
      const SessionState session = import_session(ext_dir);
      const SessionState next = extend_toward_scene(session, keys, ConditionKind::parse(config.condition));
      export_session(next, ext_dir);
      std::cout << "frames [" << session.frame_count() << ", " << next.frame_count() << ")\n";
    } else if (*pluecker) {
      config.validate();
      log_config(config);
      const CameraTrajectory poses = load_trajectory(pl_traj);
      if (poses.empty()) throw Error(ErrorCode::BadTrajectory, "trajectory has no poses");
      const auto& k = poses.front().intrinsics;
      const std::size_t h = pl_h.value_or(static_cast<std::size_t>(std::lround(2.0 * k.cy)));
      const std::size_t w = pl_w.value_or(static_cast<std::size_t>(std::lround(2.0 * k.cx)));
      LatentVolume field = pluecker_stack(poses, h, w);
      if (pl_compress) field = compress_actions(field, config.compression);
      ensure_parent(pl_out);
      save_volume(field, pl_out);
    } else if (*serve) {
      config.validate();
      log_config(config);
      return run_serve(config, host, port, http_port, export_root, static_dir);
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "forgeline: " << e.what() << "\n";
    return is_io_error(e.code()) ? 2 : 1;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "forgeline: IoError: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "forgeline: " << e.what() << "\n";
    return 1;
  }
}
