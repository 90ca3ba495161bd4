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

#include "forgeline/protocol.hpp"

#include <mutex>

#include <nlohmann/json.hpp>
#include <sodium.h>

#include "forgeline/error.hpp"

namespace forgeline {

using nlohmann::json;

namespace {

void ensure_sodium() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0) throw Error(ErrorCode::BadMessage, "libsodium failed to initialize");
  });
}

json parse_object(std::string_view text, const char* what) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::BadMessage, std::string(what) + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::BadMessage, std::string(what) + " must be a JSON object");
  return doc;
}

std::string get_string(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_string()) throw Error(ErrorCode::BadMessage, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

std::string_view verb_name(Verb verb) noexcept {
  switch (verb) {
    case Verb::Start: return "start";
    case Verb::Key: return "key";
    case Verb::Reset: return "reset";
    case Verb::Export: return "export";
  }
  return "start";
}

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  ensure_sodium();
  const std::size_t cap = sodium_base64_encoded_len(bytes.size(), sodium_base64_VARIANT_ORIGINAL);
  std::string out(cap, '\0');
  sodium_bin2base64(out.data(), cap, bytes.data(), bytes.size(), sodium_base64_VARIANT_ORIGINAL);
  out.resize(cap - 1);  // drop the terminator
  return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
  ensure_sodium();
  std::vector<std::uint8_t> out(text.size() / 4 * 3 + 3);
  std::size_t len = 0;
  const char* end = nullptr;
  if (sodium_base642bin(out.data(), out.size(), text.data(), text.size(), nullptr, &len, &end,
                        sodium_base64_VARIANT_ORIGINAL) != 0 ||
      end != text.data() + text.size()) {
    throw Error(ErrorCode::BadMessage, "payload is not valid base64");
  }
  out.resize(len);
  return out;
}

std::string message_to_json(const SteerMessage& m) {
  json doc{{"verb", std::string(verb_name(m.verb))}};
  if (m.session) doc["session"] = *m.session;
  if (m.key) doc["key"] = std::string(key_name(*m.key));
  if (m.image_png) doc["image"] = base64_encode(*m.image_png);
  if (m.condition) doc["condition"] = *m.condition;
  return doc.dump();
}

SteerMessage message_from_json(std::string_view text) {
  const json doc = parse_object(text, "message");
  SteerMessage m;
  for (const auto& [key, value] : doc.items()) {
    if (key != "verb" && key != "session" && key != "key" && key != "image" && key != "condition") {
      throw Error(ErrorCode::BadMessage, "unknown field '" + key + "'");
    }
  }
  if (!doc.contains("verb")) throw Error(ErrorCode::BadMessage, "message has no verb");
  const std::string verb = get_string(doc, "verb");
  if (verb == "start") {
    m.verb = Verb::Start;
  } else if (verb == "key") {
    m.verb = Verb::Key;
  } else if (verb == "reset") {
    m.verb = Verb::Reset;
  } else if (verb == "export") {
    m.verb = Verb::Export;
  } else {
    throw Error(ErrorCode::BadMessage, "unknown verb '" + verb + "'");
  }
  if (doc.contains("session")) m.session = get_string(doc, "session");
  if (doc.contains("key")) {
    const std::string k = get_string(doc, "key");
    m.key = parse_key(k);
    if (!m.key) throw Error(ErrorCode::BadMessage, "unknown key '" + k + "'");
  }
  if (doc.contains("image")) m.image_png = base64_decode(get_string(doc, "image"));
  if (doc.contains("condition")) m.condition = get_string(doc, "condition");

  if (m.verb == Verb::Start && !m.image_png) throw Error(ErrorCode::BadMessage, "start needs an image");
  if (m.verb != Verb::Start && !m.session) {
    throw Error(ErrorCode::BadMessage, std::string(verb_name(m.verb)) + " needs a session");
  }
  if (m.verb == Verb::Key && !m.key) throw Error(ErrorCode::BadMessage, "key needs a key");
  return m;
}

std::string reply_to_json(const SteerReply& r) {
  json previews = json::array();
  for (const auto& p : r.previews) previews.push_back(base64_encode(p));
  json doc{{"session", r.session},
           {"status", r.status},
           {"frame_range", json::array({r.frame_first, r.frame_end})},
           {"frame_count", r.frame_count},
           {"poses", r.poses},
           {"previews", previews},
           {"queue_depth", r.queue_depth}};
  if (r.path) doc["path"] = *r.path;
  if (r.error) doc["error"] = *r.error;
  if (r.detail) doc["detail"] = *r.detail;
  return doc.dump();
}

SteerReply reply_from_json(std::string_view text) {
  const json doc = parse_object(text, "reply");
  SteerReply r;
  try {
    r.session = doc.at("session").get<std::string>();
    r.status = doc.at("status").get<std::string>();
    const auto range = doc.at("frame_range").get<std::vector<std::size_t>>();
    if (range.size() != 2) throw Error(ErrorCode::BadMessage, "frame_range needs two values");
    r.frame_first = range[0];
    r.frame_end = range[1];
    r.frame_count = doc.at("frame_count").get<std::size_t>();
    r.poses = doc.at("poses").get<std::vector<std::string>>();
    for (const auto& p : doc.at("previews")) r.previews.push_back(base64_decode(p.get<std::string>()));
    r.queue_depth = doc.at("queue_depth").get<std::size_t>();
    if (doc.contains("path")) r.path = doc.at("path").get<std::string>();
    if (doc.contains("error")) r.error = doc.at("error").get<std::string>();
    if (doc.contains("detail")) r.detail = doc.at("detail").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadMessage, std::string("malformed reply: ") + e.what());
  }
  return r;
}

std::vector<std::uint8_t> frame_payload(std::string_view payload) {
  if (payload.size() > kMaxMessageBytes) throw Error(ErrorCode::BadMessage, "message exceeds the size limit");
  const auto n = static_cast<std::uint32_t>(payload.size());
  std::vector<std::uint8_t> out;
  out.reserve(4 + payload.size());
  out.push_back(static_cast<std::uint8_t>(n >> 24));
  out.push_back(static_cast<std::uint8_t>(n >> 16));
  out.push_back(static_cast<std::uint8_t>(n >> 8));
  out.push_back(static_cast<std::uint8_t>(n));
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

void FrameReader::feed(std::span<const std::uint8_t> bytes) {
  if (offset_ > 0 && offset_ == buffer_.size()) {
    buffer_.clear();
    offset_ = 0;
  }
  buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
}

std::optional<std::string> FrameReader::next() {
  if (buffered() < 4) return std::nullopt;
  const std::uint8_t* p = buffer_.data() + offset_;
  const std::size_t n = (std::size_t{p[0]} << 24) | (std::size_t{p[1]} << 16) | (std::size_t{p[2]} << 8) | p[3];
  if (n > kMaxMessageBytes) throw Error(ErrorCode::BadMessage, "declared message length exceeds the size limit");
  if (buffered() < 4 + n) return std::nullopt;
  std::string payload(reinterpret_cast<const char*>(p + 4), n);
  offset_ += 4 + n;
  return payload;
}

}  // namespace forgeline
