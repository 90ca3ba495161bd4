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


#include <algorithm>
#include <random>

#include "doctest.h"
#include "forgeline/curation.hpp"
#include "forgeline/error.hpp"

using namespace forgeline;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoError;
}

CurationRecord premium_record() {
  CurationRecord r;
  r.asset_id = "img";
  r.width = 2048;
  r.height = 2048;
  r.scores = {{"style", 0.9}, {"clarity", 0.9}, {"aesthetic", 0.9}};
  r.manual_pass = true;
  r.style = Style::TwoD;
  return r;
}

CaptionSet full_captions() {
  CaptionSet c;
  c.short_text = "s";
  c.medium = "m";
  c.detailed = "d";
  c.comprehensive = "c";
  return c;
}

std::vector<std::pair<int, int>> pairs(int exact, int off1, int off2) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < exact; ++i) out.push_back({3, 3});
  for (int i = 0; i < off1; ++i) out.push_back({3, 4});
  for (int i = 0; i < off2; ++i) out.push_back({3, 5});
  return out;
}

}  // namespace

TEST_CASE("tier gates") {
  TierThresholds th;
  CHECK(classify_tier(premium_record(), th) == Tier::Premium);

  auto r = premium_record();
  r.width = r.height = 1023;
  CHECK(classify_tier(r, th) == Tier::Bronze);

  r = premium_record();
  r.scores["style"] = 0.1;
  CHECK(classify_tier(r, th) == Tier::Rejected);

  r = premium_record();
  r.flags.watermark = true;
  CHECK(classify_tier(r, th) == Tier::Bronze);
  r = premium_record();
  r.flags.ocr_text = true;
  CHECK(classify_tier(r, th) == Tier::Bronze);
  r = premium_record();
  r.flags.aigc = true;
  CHECK(classify_tier(r, th) == Tier::Gold);
  r = premium_record();
  r.manual_pass.reset();
  CHECK(classify_tier(r, th) == Tier::Gold);
  r = premium_record();
  r.flags.logo = true;
  CHECK(classify_tier(r, th) == Tier::Premium);

  r = premium_record();
  r.scores.erase("clarity");
  try {
    classify_tier(r, th);
    FAIL("expected MissingScore");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingScore);
    CHECK(std::string(e.what()).find("clarity") != std::string::npos);
  }
}

TEST_CASE("tiers are nested for random records") {
  std::mt19937_64 rng(71);
  TierThresholds th;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    CurationRecord r;
    r.width = 900 + rng() % 300;
    r.height = 900 + rng() % 300;
    r.scores = {{"style", u(rng)}, {"clarity", u(rng)}, {"aesthetic", u(rng)}};
    r.flags = {bool(rng() & 1), bool(rng() & 1), bool(rng() & 1), bool(rng() & 1), bool(rng() & 1)};
    if (rng() & 1) r.manual_pass = bool(rng() & 1);
    Tier t = classify_tier(r, th);
    bool bronze = r.scores["style"] >= th.style;
    bool gold = bronze && r.width >= 1024 && r.height >= 1024 && r.scores["clarity"] >= th.clarity &&
                r.scores["aesthetic"] >= th.aesthetic && !r.flags.watermark && !r.flags.ocr_text;
    bool premium = gold && !r.flags.defect && !r.flags.aigc && r.manual_pass.value_or(false);
    Tier oracle = premium ? Tier::Premium : gold ? Tier::Gold : bronze ? Tier::Bronze : Tier::Rejected;
    CHECK(t == oracle);
  }
}

TEST_CASE("annotation aggregation") {
  CHECK(aggregate_annotation({"a", AestheticDimension::ColorHarmony, {3, 3, 3, 3, 5}}) == 3);
  CHECK_FALSE(aggregate_annotation({"a", AestheticDimension::FormFluidity, {2, 2, 3, 3, 4}}).has_value());
  CHECK(aggregate_annotation({"a", AestheticDimension::FormFluidity, {1, 1, 1, 1, 1}}) == 1);
  CHECK(code_of([] { aggregate_annotation({"a", AestheticDimension::ColorHarmony, {3, 3, 3, 3}}); }) ==
        ErrorCode::MalformedTask);
  CHECK(code_of([] { aggregate_annotation({"a", AestheticDimension::ColorHarmony, {3, 3, 3, 3, 6}}); }) ==
        ErrorCode::MalformedTask);
  CHECK(to_string(AestheticDimension::CompositionalLayering) == "compositional_layering");
}

TEST_CASE("acceptance calibration") {
  auto boundary = pairs(70, 25, 5);
  auto r = acceptance_check(boundary, 1.0, 3);
  CHECK(r.sampled == 100);
  CHECK(r.exact == 70);
  CHECK(r.within_one == 95);
  CHECK(r.pass);

  auto low = pairs(69, 31, 0);
  CHECK_FALSE(acceptance_check(low, 1.0, 3).pass);

  auto wide = pairs(80, 14, 6);
  CHECK_FALSE(acceptance_check(wide, 1.0, 3).pass);

  auto same = pairs(50, 0, 0);
  CHECK(acceptance_check(same).pass);
  CHECK(acceptance_check(same).sampled == 3);

  auto many = pairs(700, 250, 50);
  auto a = acceptance_check(many, 0.05, 9);
  auto b = acceptance_check(many, 0.05, 9);
  CHECK(a.sampled == 50);
  CHECK(a.exact == b.exact);
  CHECK(code_of([] { acceptance_check({}); }) == ErrorCode::EmptyBatch);
}

TEST_CASE("caption sampling") {
  auto set = full_captions();
  std::mt19937_64 rng(72);
  std::size_t comprehensive = 0;
  const std::size_t n = 20000;
  for (std::size_t i = 0; i < n; ++i) comprehensive += sample_caption(set, rng) == "c";
  CHECK(double(comprehensive) / n == doctest::Approx(0.7).epsilon(0.03));

  std::mt19937_64 r1(5), r2(5);
  for (int i = 0; i < 50; ++i) CHECK(sample_caption(set, r1) == sample_caption(set, r2));

  CaptionSet only;
  only.comprehensive = "c";
  CHECK(code_of([&] { sample_caption(only, rng); }) == ErrorCode::IncompleteCaptionSet);

  CaptionSet clip;
  clip.long_motion = "lm";
  for (int i = 0; i < 20; ++i) CHECK(sample_clip_caption(clip, rng) == "lm");
  CHECK(code_of([&] { sample_clip_caption(CaptionSet{}, rng); }) == ErrorCode::IncompleteCaptionSet);
  clip.short_visual = "sv";
  std::size_t sv = 0;
  for (int i = 0; i < 4000; ++i) sv += sample_clip_caption(clip, rng, {0, 1, 3, 0}) == "sv";
  CHECK(sv / 4000.0 == doctest::Approx(0.75).epsilon(0.05));
}

TEST_CASE("uniform draws") {
  std::mt19937_64 rng(73);
  for (int i = 0; i < 1000; ++i) {
    double u = unit_draw(rng);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(bounded_draw(rng, 7) < 7);
  }
}

namespace {

std::vector<CurationRecord> styled(std::size_t two_d, std::size_t three_d, std::mt19937_64& rng) {
  std::vector<CurationRecord> out;
  for (std::size_t i = 0; i < two_d + three_d; ++i) {
    CurationRecord r;
    r.asset_id = "a" + std::to_string(i);
    r.style = i < two_d ? Style::TwoD : Style::ThreeD;
    r.scores["aesthetic"] = double(rng() % 1000) / 1000.0;
    out.push_back(r);
  }
  return out;
}

std::size_t count(const std::vector<CurationRecord>& rs, Style s) {
  return std::count_if(rs.begin(), rs.end(), [&](const auto& r) { return r.style == s; });
}

}  // namespace

TEST_CASE("style balancing") {
  std::mt19937_64 rng(74);
  auto big = styled(1000, 400, rng);
  auto kept = balance_styles(big, 1);
  CHECK(count(kept, Style::TwoD) == 400);
  CHECK(count(kept, Style::ThreeD) == 400);
  // The surviving 2D records are the top-scored ones.
  double min_kept = 1.0, max_dropped = 0.0;
  for (const auto& r : big) {
    if (r.style != Style::TwoD) continue;
    bool in = std::any_of(kept.begin(), kept.end(), [&](const auto& k) { return k.asset_id == r.asset_id; });
    if (in) min_kept = std::min(min_kept, r.scores.at("aesthetic"));
    else max_dropped = std::max(max_dropped, r.scores.at("aesthetic"));
  }
  CHECK(min_kept >= max_dropped);

  auto even = styled(500, 500, rng);
  CHECK(balance_styles(even).size() == 1000);

  auto small = styled(3, 2, rng);
  auto b = balance_styles(small);
  CHECK(count(b, Style::TwoD) == 2);
  CHECK(count(b, Style::ThreeD) == 2);

  auto with_other = styled(4, 2, rng);
  with_other[1].style = Style::Other;
  auto o = balance_styles(with_other);
  CHECK(count(o, Style::Other) == 1);
  CHECK(count(o, Style::TwoD) == 2);

  auto one_style = styled(4, 0, rng);
  CHECK(code_of([&] { balance_styles(one_style); }) == ErrorCode::OneStyleMissing);
  CHECK(balance_styles(big, 1).size() == kept.size());
}
