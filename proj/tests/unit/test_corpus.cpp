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


#include <filesystem>
#include <random>

#include "doctest.h"
#include "forgeline/config.hpp"
#include "forgeline/corpus.hpp"
#include "forgeline/error.hpp"
#include "forgeline/png_io.hpp"
#include <nlohmann/json.hpp>
#include "test_support.hpp"

using namespace forgeline;
using forgeline::testing::solid_image;

namespace fs = std::filesystem;

namespace {

const fs::path& fixture_root() {
  static const fs::path root = [] {
    auto dir = forgeline::testing::scratch_dir(FORGELINE_TEST_TMP, "fixture");
    generate_fixture_corpus(dir, 0);
    return dir;
  }();
  return root;
}

}  // namespace

TEST_CASE("stand-in scorers") {
  SaturationStyleScorer style;
  GradientClarityScorer clarity;
  LumaEntropyAestheticScorer aesthetic;
  auto gray = solid_image(8, 8, 120, 120, 120);
  auto red = solid_image(8, 8, 255, 0, 0);
  CHECK(style.score(gray) == 0.0);
  CHECK(style.score(red) == 1.0);
  CHECK(clarity.score(gray) == 0.0);
  CHECK(aesthetic.score(gray) == 0.0);

  // Two luma bins, equally populated: one bit of entropy out of five.
  auto split = solid_image(8, 8, 0, 0, 0);
  for (std::size_t y = 0; y < 8; ++y)
    for (std::size_t x = 4; x < 8; ++x) split.set_pixel(y, x, 255, 255, 255);
  CHECK(aesthetic.score(split) == doctest::Approx(0.2));
  CHECK(clarity.score(split) > 0.0);

  auto scorers = default_image_scorers();
  REQUIRE(scorers.size() == 3);
  for (const auto& s : scorers) {
    double v = s->score(split);
    CHECK(v >= s->lo());
    CHECK(v <= s->hi());
    CHECK_FALSE(s->id().empty());
  }
}

TEST_CASE("sidecars") {
  auto s = parse_sidecar(R"({"style": "3D", "flags": {"watermark": true}, "manual_pass": false,
                            "captions": {"short": "a", "comprehensive": "b", "tags": ["x"]}})");
  CHECK(s.style == Style::ThreeD);
  CHECK(s.flags.watermark);
  CHECK_FALSE(s.flags.aigc);
  CHECK(s.manual_pass == false);
  CHECK(s.captions.short_text == "a");
  CHECK(s.captions.tags == std::vector<std::string>{"x"});

  auto defaults = parse_sidecar("{}");
  CHECK(defaults.style == Style::Other);
  CHECK_FALSE(defaults.manual_pass.has_value());

  CHECK_THROWS_AS(parse_sidecar("{"), Error);
  CHECK_THROWS_AS(parse_sidecar(R"({"style": "4D"})"), Error);
  CHECK_THROWS_AS(parse_sidecar(R"({"manual_pass": "yes"})"), Error);
  CHECK(load_sidecar(fs::path(FORGELINE_TEST_TMP) / "nope.json").style == Style::Other);
}

TEST_CASE("corpus scanning") {
  auto dir = forgeline::testing::scratch_dir(FORGELINE_TEST_TMP, "scan");
  fs::create_directories(dir / "images");
  fs::create_directories(dir / "clips" / "c1");
  write_png(solid_image(4, 4, 1, 2, 3), dir / "images" / "b.png");
  write_png(solid_image(4, 4, 1, 2, 3), dir / "images" / "a.png");
  write_png(solid_image(4, 4, 1, 2, 3), dir / "clips" / "c1" / "0001.png");
  write_png(solid_image(4, 4, 9, 2, 3), dir / "clips" / "c1" / "0000.png");
  auto assets = scan_corpus(dir);
  REQUIRE(assets.size() == 3);
  CHECK(assets[0].id == "a");
  CHECK(assets[1].id == "b");
  CHECK(assets[2].id == "c1");
  CHECK(assets[2].kind == AssetKind::Clip);
  auto frames = load_clip_frames(dir / "clips" / "c1");
  REQUIRE(frames.size() == 2);
  CHECK(frames[0].at(0, 0, 0) == 9);
}

TEST_CASE("fixture curation run") {
  CurationConfig config;
  auto run = run_curation(fixture_root(), config, 0);
  CHECK(run.images.size() == 40);
  CHECK(run.manifest_lines.size() == run.images.size() + run.clips.size());

  std::size_t bronze = 0, gold = 0, premium = 0;
  for (const auto& r : run.images) {
    // Rejected records carry no tier.
    const Tier tier = r.tier.value_or(Tier::Rejected);
    CHECK(r.tier != Tier::Rejected);
    CHECK(tier == classify_tier(r, config.tiers));
    bronze += tier >= Tier::Bronze;
    gold += tier >= Tier::Gold;
    premium += tier == Tier::Premium;
    CHECK(r.scorer_ids.at("style") == "hsv-saturation/1");
  }
  CHECK(premium <= gold);
  CHECK(gold <= bronze);
  CHECK(premium > 0);
  CHECK(bronze < 40);

  std::size_t two = 0, three = 0;
  for (std::size_t i = 0; i < run.clips.size(); ++i) {
    if (run.clip_selected[i]) {
      CHECK(run.clip_kept[i]);
      two += run.clips[i].style == Style::TwoD;
      three += run.clips[i].style == Style::ThreeD;
    }
  }
  REQUIRE(two + three > 0);
  const double ratio = double(two) / double(two + three);
  CHECK(ratio >= 0.48);
  CHECK(ratio <= 0.52);

  auto summary = nlohmann::json::parse(run.summary_json);
  CHECK(summary["images"]["total"] == 40);
  CHECK(summary["images"]["premium"] == premium);

  config.threads = 4;
  auto parallel = run_curation(fixture_root(), config, 0);
  CHECK(parallel.manifest_lines == run.manifest_lines);
  CHECK(parallel.summary_json == run.summary_json);

  auto reseeded = run_curation(fixture_root(), config, 1);
  CHECK(reseeded.manifest_lines != run.manifest_lines);

  auto out = fs::path(FORGELINE_TEST_TMP) / "out";
  write_curation_outputs(run, out);
  CHECK(fs::exists(out / "manifest.jsonl"));
  CHECK(fs::exists(out / "summary.json"));
}

TEST_CASE("clip segments partition their clip") {
  auto run = run_curation(fixture_root(), CurationConfig{}, 0);
  std::map<std::string, std::vector<ClipBounds>> per_clip;
  for (const auto& r : run.clips) {
    REQUIRE(r.clip.has_value());
    auto base = r.asset_id.substr(0, r.asset_id.find('#'));
    per_clip[base].push_back(*r.clip);
  }
  CHECK(per_clip.size() == 20);
  for (const auto& [id, parts] : per_clip) {
    std::size_t at = 0;
    for (const auto& b : parts) {
      CHECK(b.start == at);
      at = b.end;
    }
  }
}
