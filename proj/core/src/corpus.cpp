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

#include "forgeline/corpus.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numbers>
#include <thread>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "forgeline/container.hpp"
#include "forgeline/error.hpp"
#include "forgeline/noise.hpp"
#include "forgeline/png_io.hpp"
#include "forgeline/video_analysis.hpp"

namespace forgeline {

namespace fs = std::filesystem;
using nlohmann::json;

double SaturationStyleScorer::score(const Rgba8Image& image) const {
  if (image.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t y = 0; y < image.height(); ++y) {
    for (std::size_t x = 0; x < image.width(); ++x) {
      const int r = image.at(y, x, 0), g = image.at(y, x, 1), b = image.at(y, x, 2);
      const int mx = std::max({r, g, b}), mn = std::min({r, g, b});
      if (mx > 0) sum += static_cast<double>(mx - mn) / static_cast<double>(mx);
    }
  }
  return sum / static_cast<double>(image.height() * image.width());
}

double GradientClarityScorer::score(const Rgba8Image& image) const {
  if (image.height() < 2 || image.width() < 2) return 0.0;
  const auto l = luma_plane(image);
  const std::size_t W = image.width(), H = image.height();
  std::uint64_t sum = 0;
  for (std::size_t y = 0; y + 1 < H; ++y) {
    for (std::size_t x = 0; x + 1 < W; ++x) {
      const int c = l[y * W + x];
      sum += static_cast<std::uint64_t>(std::abs(l[y * W + x + 1] - c) + std::abs(l[(y + 1) * W + x] - c));
    }
  }
  const double mean = static_cast<double>(sum) / static_cast<double>((H - 1) * (W - 1));
  return std::min(1.0, mean / 32.0);
}

double LumaEntropyAestheticScorer::score(const Rgba8Image& image) const {
  if (image.empty()) return 0.0;
  std::array<std::uint64_t, 32> hist{};
  for (std::uint8_t v : luma_plane(image)) ++hist[v / 8u];
  const double n = static_cast<double>(image.height() * image.width());
  double entropy = 0.0;
  for (std::uint64_t h : hist) {
    if (h) {
      const double p = static_cast<double>(h) / n;
      entropy -= p * std::log2(p);
    }
  }
  return std::clamp(entropy / 5.0, 0.0, 1.0);
}

std::vector<std::unique_ptr<Scorer>> default_image_scorers() {
  std::vector<std::unique_ptr<Scorer>> out;
  out.push_back(std::make_unique<SaturationStyleScorer>());
  out.push_back(std::make_unique<GradientClarityScorer>());
  out.push_back(std::make_unique<LumaEntropyAestheticScorer>());
  return out;
}

std::vector<CorpusAsset> scan_corpus(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw Error(ErrorCode::IoError, "corpus root '" + root.string() + "' is not a directory");
  std::vector<CorpusAsset> assets;
  const fs::path images = root / "images";
  if (fs::is_directory(images, ec)) {
    for (const auto& entry : fs::directory_iterator(images)) {
      if (!entry.is_regular_file() || entry.path().extension() != ".png") continue;
      const std::string id = entry.path().stem().string();
      assets.push_back(CorpusAsset{id, AssetKind::Image, entry.path(), images / (id + ".json")});
    }
  }
  const fs::path clips = root / "clips";
  if (fs::is_directory(clips, ec)) {
    for (const auto& entry : fs::directory_iterator(clips)) {
      if (!entry.is_directory()) continue;
      const std::string id = entry.path().filename().string();
      assets.push_back(CorpusAsset{id, AssetKind::Clip, entry.path(), clips / (id + ".json")});
    }
  }
  std::sort(assets.begin(), assets.end(), [](const CorpusAsset& a, const CorpusAsset& b) {
    if (a.kind != b.kind) return a.kind == AssetKind::Image;
    return a.id < b.id;
  });
  return assets;
}

Sidecar parse_sidecar(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::BadConfig, std::string("sidecar is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::BadConfig, "sidecar must be an object");
  Sidecar s;
  try {
    if (doc.contains("style")) {
      const auto text = doc.at("style").get<std::string>();
      const auto style = parse_style(text);
      if (!style) throw Error(ErrorCode::BadConfig, "sidecar style '" + text + "' is not 2D, 3D or other");
      s.style = *style;
    }
    if (doc.contains("flags")) {
      const json& f = doc.at("flags");
      s.flags.watermark = f.value("watermark", false);
      s.flags.ocr_text = f.value("ocr_text", false);
      s.flags.logo = f.value("logo", false);
      s.flags.defect = f.value("defect", false);
      s.flags.aigc = f.value("aigc", false);
    }
    if (doc.contains("manual_pass") && !doc.at("manual_pass").is_null()) s.manual_pass = doc.at("manual_pass").get<bool>();
    if (doc.contains("captions")) {
      const json& c = doc.at("captions");
      auto take = [&](const char* key, std::optional<std::string>& slot) {
        if (c.contains(key)) slot = c.at(key).get<std::string>();
      };
      take("short", s.captions.short_text);
      take("medium", s.captions.medium);
      take("detailed", s.captions.detailed);
      take("comprehensive", s.captions.comprehensive);
      take("long_visual", s.captions.long_visual);
      take("long_motion", s.captions.long_motion);
      take("short_visual", s.captions.short_visual);
      take("short_motion", s.captions.short_motion);
      if (c.contains("tags")) s.captions.tags = c.at("tags").get<std::vector<std::string>>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadConfig, std::string("sidecar field has the wrong type: ") + e.what());
  }
  return s;
}

Sidecar load_sidecar(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) return Sidecar{};
  const auto bytes = read_file_bytes(path);
  return parse_sidecar(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

std::vector<Rgba8Image> load_clip_frames(const fs::path& dir) {
  std::vector<fs::path> files;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::IoError, "clip directory '" + dir.string() + "' is missing");
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Rgba8Image> frames;
  frames.reserve(files.size());
  for (const auto& f : files) frames.push_back(read_png(f));
  return frames;
}

namespace {

std::uint64_t id_hash(std::string_view id) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : id) h = (h ^ ch) * 0x100000001b3ull;
  return h;
}

json captions_json(const CaptionSet& c) {
  json out = json::object();
  auto put = [&](const char* key, const std::optional<std::string>& v) {
    if (v) out[key] = *v;
  };
  put("short", c.short_text);
  put("medium", c.medium);
  put("detailed", c.detailed);
  put("comprehensive", c.comprehensive);
  put("long_visual", c.long_visual);
  put("long_motion", c.long_motion);
  put("short_visual", c.short_visual);
  put("short_motion", c.short_motion);
  if (!c.tags.empty()) out["tags"] = c.tags;
  return out;
}

json record_json(const CurationRecord& r) {
  json flags{{"watermark", r.flags.watermark},
             {"ocr_text", r.flags.ocr_text},
             {"logo", r.flags.logo},
             {"defect", r.flags.defect},
             {"aigc", r.flags.aigc}};
  json out{{"id", r.asset_id},
           {"kind", std::string(to_string(r.kind))},
           {"width", r.width},
           {"height", r.height},
           {"frames", r.frames},
           {"scores", r.scores},
           {"scorers", r.scorer_ids},
           {"flags", flags},
           {"style", std::string(to_string(r.style))},
           {"captions", captions_json(r.captions)}};
  out["manual_pass"] = r.manual_pass ? json(*r.manual_pass) : json(nullptr);
  if (r.clip) out["clip"] = json::array({r.clip->start, r.clip->end});
  return out;
}

// Runs fn(i) for i in [0, n) on `threads` workers; results land by index.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(threads, n); ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n && !failed; i = next++) {
          try {
            fn(i);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

struct ClipSegments {
  std::vector<CurationRecord> records;
  std::vector<bool> kept;
};

ClipSegments curate_clip(const CorpusAsset& asset, const CurationConfig& config) {
  const Sidecar side = load_sidecar(asset.sidecar);
  const auto frames = load_clip_frames(asset.path);
  if (frames.empty()) throw Error(ErrorCode::TooShort, "clip '" + asset.id + "' has no frames");
  for (const auto& f : frames) {
    if (f.height() != frames[0].height() || f.width() != frames[0].width()) {
      throw Error(ErrorCode::ShapeMismatch, "clip '" + asset.id + "' mixes frame sizes");
    }
  }
  const std::span<const Rgba8Image> all(frames);
  std::vector<ClipBounds> scenes;
  if (frames.size() >= 2) {
    scenes = split_scenes(all, config.scenes);
  } else {
    scenes.push_back(ClipBounds{0, frames.size()});
  }

  SaturationStyleScorer style_scorer;
  LumaEntropyAestheticScorer aesthetic_scorer;
  ClipSegments out;
  std::size_t segment = 0;
  for (const ClipBounds& scene : scenes) {
    const auto scene_frames = all.subspan(scene.start, scene.end - scene.start);
    std::vector<ClipBounds> parts{ClipBounds{0, scene_frames.size()}};
    if (scene_frames.size() >= 3) parts = motion_split(scene_frames, config.motion_threshold, config.flow);
    for (const ClipBounds& part : parts) {
      const auto seg = scene_frames.subspan(part.start, part.end - part.start);
      CurationRecord r;
      r.asset_id = fmt::format("{}#{}", asset.id, segment++);
      r.kind = AssetKind::Clip;
      r.width = frames[0].width();
      r.height = frames[0].height();
      r.frames = seg.size();
      r.clip = ClipBounds{scene.start + part.start, scene.start + part.end};
      r.flags = side.flags;
      r.manual_pass = side.manual_pass;
      r.style = side.style;
      r.captions = side.captions;
      const Rgba8Image& middle = seg[seg.size() / 2];
      r.scores["luminance"] = luminance_quality(seg);
      r.scorer_ids["luminance"] = kLuminanceScorerId;
      r.scores["motion_richness"] = seg.size() >= 2 ? motion_richness(seg, config.fps, config.flow) : 0.0;
      r.scorer_ids["motion_richness"] = kRichnessScorerId;
      r.scores["style"] = style_scorer.score(middle);
      r.scorer_ids["style"] = style_scorer.id();
      r.scores["aesthetic"] = aesthetic_scorer.score(middle);
      r.scorer_ids["aesthetic"] = aesthetic_scorer.id();
      out.kept.push_back(r.scores["luminance"] >= config.luminance_min);
      out.records.push_back(std::move(r));
    }
  }
  return out;
}

CurationRecord curate_image(const CorpusAsset& asset, const CurationConfig& config,
                            const std::vector<std::unique_ptr<Scorer>>& scorers) {
  const Sidecar side = load_sidecar(asset.sidecar);
  const Rgba8Image image = read_png(asset.path);
  CurationRecord r;
  r.asset_id = asset.id;
  r.kind = AssetKind::Image;
  r.width = image.width();
  r.height = image.height();
  r.frames = 1;
  r.flags = side.flags;
  r.manual_pass = side.manual_pass;
  r.style = side.style;
  r.captions = side.captions;
  for (const auto& scorer : scorers) {
    const double s = scorer->score(image);
    if (!(s >= scorer->lo() && s <= scorer->hi())) {
      throw Error(ErrorCode::MissingScore, "scorer " + scorer->id() + " left its declared range");
    }
    r.scores[scorer->name()] = s;
    r.scorer_ids[scorer->name()] = scorer->id();
  }
  const Tier tier = classify_tier(r, config.tiers);
  if (tier != Tier::Rejected) r.tier = tier;
  return r;
}

json histogram_json(const std::vector<double>& values) {
  std::vector<std::size_t> bins(10, 0);
  for (double v : values) bins[std::min<std::size_t>(9, static_cast<std::size_t>(std::max(0.0, v) * 10.0))]++;
  return bins;
}

}  // namespace

CurationRun run_curation(const fs::path& corpus_root, const CurationConfig& config, std::uint64_t seed) {
  const auto assets = scan_corpus(corpus_root);
  std::vector<CorpusAsset> images, clips;
  for (const auto& a : assets) (a.kind == AssetKind::Image ? images : clips).push_back(a);

  const auto scorers = default_image_scorers();
  CurationRun run;
  run.images.resize(images.size());
  parallel_for(images.size(), config.threads,
               [&](std::size_t i) { run.images[i] = curate_image(images[i], config, scorers); });

  std::vector<ClipSegments> per_clip(clips.size());
  parallel_for(clips.size(), config.threads,
               [&](std::size_t i) { per_clip[i] = curate_clip(clips[i], config); });
  for (auto& c : per_clip) {
    for (std::size_t k = 0; k < c.records.size(); ++k) {
      run.clips.push_back(std::move(c.records[k]));
      run.clip_kept.push_back(c.kept[k]);
    }
  }

  // Barrier: balancing sees every kept segment.
  std::vector<CurationRecord> kept;
  for (std::size_t i = 0; i < run.clips.size(); ++i)
    if (run.clip_kept[i]) kept.push_back(run.clips[i]);
  run.clip_selected.assign(run.clips.size(), false);
  bool balanced = false;
  bool has_2d = false, has_3d = false;
  for (const auto& r : kept) {
    has_2d |= r.style == Style::TwoD;
    has_3d |= r.style == Style::ThreeD;
  }
  std::vector<CurationRecord> selected = kept;
  if (has_2d && has_3d) {
    selected = balance_styles(kept, sub_seed(seed, 0x42414C41ull));
    balanced = true;
  }
  {
    std::size_t s = 0;
    for (std::size_t i = 0; i < run.clips.size() && s < selected.size(); ++i) {
      if (run.clip_kept[i] && run.clips[i].asset_id == selected[s].asset_id) {
        run.clip_selected[i] = true;
        ++s;
      }
    }
  }

  // Manifest lines. Caption draws use a per-asset stream so they do not
  // depend on corpus order or thread count.
  for (const auto& r : run.images) {
    json line = record_json(r);
    line["tier"] = r.tier ? std::string(to_string(*r.tier)) : std::string("rejected");
    std::mt19937_64 rng(sub_seed(seed, id_hash(r.asset_id)));
    try {
      line["caption"] = sample_caption(r.captions, rng);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IncompleteCaptionSet) throw;
      line["caption"] = nullptr;
    }
    run.manifest_lines.push_back(line.dump());
  }
  for (std::size_t i = 0; i < run.clips.size(); ++i) {
    const auto& r = run.clips[i];
    json line = record_json(r);
    line["kept"] = static_cast<bool>(run.clip_kept[i]);
    line["selected"] = static_cast<bool>(run.clip_selected[i]);
    std::mt19937_64 rng(sub_seed(seed, id_hash(r.asset_id)));
    try {
      line["caption"] = sample_clip_caption(r.captions, rng, config.clip_caption_weights);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IncompleteCaptionSet) throw;
      line["caption"] = nullptr;
    }
    run.manifest_lines.push_back(line.dump());
  }

  // Summary report.
  std::size_t rejected = 0, bronze = 0, gold = 0, premium = 0;
  std::vector<double> style_s, clarity_s, aesthetic_s, luminance_s;
  for (const auto& r : run.images) {
    const Tier t = r.tier.value_or(Tier::Rejected);
    if (t == Tier::Rejected) ++rejected;
    if (t >= Tier::Bronze) ++bronze;
    if (t >= Tier::Gold) ++gold;
    if (t >= Tier::Premium) ++premium;
    style_s.push_back(r.scores.at("style"));
    clarity_s.push_back(r.scores.at("clarity"));
    aesthetic_s.push_back(r.scores.at("aesthetic"));
  }
  std::size_t kept_n = 0, sel_2d = 0, sel_3d = 0, sel_n = 0;
  double richness_min = 0.0, richness_max = 0.0, richness_sum = 0.0;
  for (std::size_t i = 0; i < run.clips.size(); ++i) {
    const auto& r = run.clips[i];
    luminance_s.push_back(r.scores.at("luminance"));
    const double rich = r.scores.at("motion_richness");
    richness_min = i == 0 ? rich : std::min(richness_min, rich);
    richness_max = i == 0 ? rich : std::max(richness_max, rich);
    richness_sum += rich;
    kept_n += run.clip_kept[i] ? 1 : 0;
    if (run.clip_selected[i]) {
      ++sel_n;
      sel_2d += r.style == Style::TwoD ? 1 : 0;
      sel_3d += r.style == Style::ThreeD ? 1 : 0;
    }
  }
  const double ratio = sel_2d + sel_3d ? static_cast<double>(sel_2d) / static_cast<double>(sel_2d + sel_3d) : 0.0;
  json summary{
      {"seed", seed},
      {"images",
       {{"total", run.images.size()},
        {"rejected", rejected},
        {"bronze_or_better", bronze},
        {"gold_or_better", gold},
        {"premium", premium},
        {"histograms", {{"style", histogram_json(style_s)}, {"clarity", histogram_json(clarity_s)}, {"aesthetic", histogram_json(aesthetic_s)}}}}},
      {"clips",
       {{"assets", clips.size()},
        {"segments", run.clips.size()},
        {"kept", kept_n},
        {"selected", sel_n},
        {"selected_2d", sel_2d},
        {"selected_3d", sel_3d},
        {"ratio_2d", ratio},
        {"balanced", balanced},
        {"histograms", {{"luminance", histogram_json(luminance_s)}}},
        {"motion_richness",
         {{"min", richness_min},
          {"max", richness_max},
          {"mean", run.clips.empty() ? 0.0 : richness_sum / static_cast<double>(run.clips.size())}}}}},
  };
  run.summary_json = summary.dump(2);
  return run;
}

void write_curation_outputs(const CurationRun& run, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create '" + dir.string() + "': " + ec.message());
  std::string manifest;
  for (const auto& line : run.manifest_lines) {
    manifest += line;
    manifest += '\n';
  }
  write_file_bytes(dir / "manifest.jsonl", std::span(reinterpret_cast<const std::uint8_t*>(manifest.data()), manifest.size()));
  const std::string summary = run.summary_json + "\n";
  write_file_bytes(dir / "summary.json", std::span(reinterpret_cast<const std::uint8_t*>(summary.data()), summary.size()));
}

// ---------------------------------------------------------------------------
// Fixture corpus

namespace {

constexpr std::array<std::array<double, 3>, 6> kPalette{{
    {1.0, 0.3, 0.1},
    {0.1, 0.6, 1.0},
    {0.2, 1.0, 0.3},
    {1.0, 0.9, 0.2},
    {0.7, 0.2, 1.0},
    {1.0, 0.2, 0.6},
}};

std::uint8_t to_byte(double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

void tinted(Rgba8Image& img, std::size_t y, std::size_t x, double luma, double sat, const std::array<double, 3>& col) {
  img.set_pixel(y, x, to_byte(luma * ((1.0 - sat) + sat * col[0])), to_byte(luma * ((1.0 - sat) + sat * col[1])),
                to_byte(luma * ((1.0 - sat) + sat * col[2])));
}

void write_json(const json& doc, const fs::path& path) {
  const std::string text = doc.dump(2) + "\n";
  write_file_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

Rgba8Image fixture_image(std::size_t i, std::uint64_t seed) {
  std::mt19937_64 rng(sub_seed(seed, i));
  std::size_t h = 240, w = 320;
  if (i % 3 == 0) {
    h = w = 1024;
  } else if (i % 6 == 1) {
    h = w = 1023;
  }
  const double sat = i % 5 == 4 ? 0.35 : 0.7 + 0.25 * static_cast<double>((i * 3) % 4) / 3.0;
  const double lo = 20.0 + static_cast<double>(bounded_draw(rng, 60));
  const double span = 10.0 + static_cast<double>(bounded_draw(rng, 160));
  const std::size_t period = 4;
  const double amplitude = 20.0 + 15.0 * static_cast<double>((i + bounded_draw(rng, 2)) % 5);
  const auto& col = kPalette[bounded_draw(rng, kPalette.size())];
  Rgba8Image img(h, w);
  for (std::size_t y = 0; y < h; ++y) {
    const double stripe = (y % period) < period / 2 ? amplitude : 0.0;
    for (std::size_t x = 0; x < w; ++x) {
      const double l = std::min(250.0, lo + span * static_cast<double>(x) / static_cast<double>(w - 1) + stripe);
      tinted(img, y, x, l, sat, col);
    }
  }
  return img;
}

json fixture_image_sidecar(std::size_t i) {
  json side;
  side["style"] = i % 10 == 9 ? "other" : (i % 2 == 0 ? "2D" : "3D");
  side["flags"] = {{"watermark", i % 7 == 3}, {"ocr_text", i % 11 == 5}, {"logo", i % 6 == 5},
                   {"defect", i % 9 == 4},    {"aigc", i % 13 == 6}};
  if (i % 17 != 8) side["manual_pass"] = i % 5 != 2;
  json caps{{"short", fmt::format("asset {} short", i)},
            {"detailed", fmt::format("asset {} detailed description of the scene", i)},
            {"comprehensive", fmt::format("asset {} comprehensive description with lighting, layout and style", i)}};
  if (i % 8 != 7) caps["medium"] = fmt::format("asset {} medium description", i);
  side["captions"] = caps;
  return side;
}

// Periodic luma texture shifted by (ox, oy); periods divide 64.
double texture(long x, long y, long ox, long oy, long period_x, long period_y, double phase) {
  const double tx = 2.0 * std::numbers::pi * static_cast<double>(x - ox) / static_cast<double>(period_x);
  const double ty = 2.0 * std::numbers::pi * static_cast<double>(y - oy) / static_cast<double>(period_y);
  return 128.0 + 55.0 * std::sin(tx + phase) + 35.0 * std::cos(ty);
}

std::vector<Rgba8Image> fixture_clip(std::size_t j) {
  constexpr std::size_t kSide = 64;
  const double phase = 0.37 * static_cast<double>(j);
  const auto& col = kPalette[j % kPalette.size()];
  const double sat = 0.3 + 0.05 * static_cast<double>(j % 8);
  std::vector<Rgba8Image> frames;
  auto frame_at = [&](long ox, long oy, const std::array<double, 3>& c, double gain, double bias) {
    Rgba8Image img(kSide, kSide);
    for (std::size_t y = 0; y < kSide; ++y)
      for (std::size_t x = 0; x < kSide; ++x) {
        const double l = bias + gain * texture(static_cast<long>(x), static_cast<long>(y), ox, oy, 32, 32, phase);
        tinted(img, y, x, l, sat, c);
      }
    return img;
  };
  switch (j % 5) {
    case 0:  // static
      for (std::size_t t = 0; t < 24; ++t) frames.push_back(frame_at(0, 0, col, 1.0, 0.0));
      break;
    case 1: {  // slow then fast rightward pan
      long ox = 0;
      for (std::size_t t = 0; t < 24; ++t) {
        frames.push_back(frame_at(ox, 0, col, 1.0, 0.0));
        ox += t < 12 ? 1 : 6;
      }
      break;
    }
    case 2:  // hard cut between two palettes
      for (std::size_t t = 0; t < 30; ++t) {
        frames.push_back(t < 15 ? frame_at(0, 0, kPalette[0], 1.0, 0.0) : frame_at(0, 0, kPalette[1], 0.6, 80.0));
      }
      break;
    case 3:  // underexposed
      for (std::size_t t = 0; t < 20; ++t) frames.push_back(frame_at(static_cast<long>(t), 0, col, 0.03, 0.0));
      break;
    default: {  // right, up, left, down
      constexpr std::array<std::array<long, 2>, 4> kSteps{{{1, 0}, {0, -1}, {-1, 0}, {0, 1}}};
      long ox = 0, oy = 0;
      for (std::size_t t = 0; t < 25; ++t) {
        frames.push_back(frame_at(ox, oy, col, 1.0, 0.0));
        const auto& s = kSteps[std::min<std::size_t>(t / 6, 3)];
        ox += s[0];
        oy += s[1];
      }
      break;
    }
  }
  return frames;
}

json fixture_clip_sidecar(std::size_t j) {
  json side;
  side["style"] = j % 3 != 2 ? "2D" : "3D";
  side["flags"] = {{"watermark", false}, {"ocr_text", false}, {"logo", false}, {"defect", false}, {"aigc", false}};
  side["captions"] = {{"long_visual", fmt::format("clip {} long visual caption", j)},
                      {"long_motion", fmt::format("clip {} long motion caption", j)},
                      {"short_visual", fmt::format("clip {} visual", j)},
                      {"short_motion", fmt::format("clip {} motion", j)},
                      {"tags", json::array({"fixture", j % 2 ? "pan" : "still"})}};
  return side;
}

}  // namespace

void generate_fixture_corpus(const fs::path& root, std::uint64_t seed) {
  std::error_code ec;
  fs::create_directories(root / "images", ec);
  fs::create_directories(root / "clips", ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create fixture tree under '" + root.string() + "'");
  for (std::size_t i = 0; i < 40; ++i) {
    const std::string id = fmt::format("img_{:02}", i);
    write_png(fixture_image(i, seed), root / "images" / (id + ".png"));
    write_json(fixture_image_sidecar(i), root / "images" / (id + ".json"));
  }
  for (std::size_t j = 0; j < 20; ++j) {
    const std::string id = fmt::format("clip_{:02}", j);
    const fs::path dir = root / "clips" / id;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create '" + dir.string() + "'");
    const auto frames = fixture_clip(j);
    for (std::size_t t = 0; t < frames.size(); ++t) write_png(frames[t], dir / fmt::format("frame_{:04}.png", t));
    write_json(fixture_clip_sidecar(j), root / "clips" / (id + ".json"));
  }
}

}  // namespace forgeline
