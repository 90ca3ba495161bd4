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

#include "forgeline/service.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <condition_variable>
#include <cstring>
#include <deque>

#include "forgeline/codec.hpp"
#include "forgeline/extend.hpp"
#include "forgeline/png_io.hpp"
#include "forgeline/preview.hpp"

namespace forgeline {

SteerReply error_reply(const std::string& session, const Error& error) {
  SteerReply r;
  r.session = session;
  r.status = "error";
  r.error = std::string(error_name(error.code()));
  r.detail = error.detail();
  return r;
}

namespace {

std::future<SteerReply> ready(SteerReply reply) {
  std::promise<SteerReply> p;
  p.set_value(std::move(reply));
  return p.get_future();
}

std::vector<std::string> pose_lines(const SessionState& state, std::size_t first, std::size_t end) {
  const std::span<const CameraPose> poses(state.trajectory);
  const std::string text = format_trajectory(poses.subspan(first, end - first), first);
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string line = text.substr(pos, nl - pos);
    if (!line.empty() && line[0] != '#') lines.push_back(std::move(line));
    pos = nl + 1;
  }
  return lines;
}

void fill_frames(SteerReply& r, const SessionState& state, std::size_t first, std::size_t end) {
  r.frame_first = first;
  r.frame_end = end;
  r.frame_count = state.frame_count();
  r.poses = pose_lines(state, first, end);
  for (std::size_t f = first; f < end; ++f) r.previews.push_back(encode_png(decode_frame(state.timeline, f)));
}

}  // namespace

struct SessionService::Session {
  struct Job {
    SteerMessage message;
    std::promise<SteerReply> promise;
  };

  std::string id;
  SessionState initial;
  SessionState state;
  ConditionKind kind = ConditionKind::single_frame();
  std::filesystem::path export_root;

  std::mutex mutex;
  std::condition_variable cv;
  std::deque<Job> queue;
  bool closing = false;
  std::jthread worker;

  void loop() {
    for (;;) {
      Job job;
      std::size_t remaining = 0;
      {
        std::unique_lock lock(mutex);
        cv.wait(lock, [&] { return closing || !queue.empty(); });
        if (queue.empty()) return;
        job = std::move(queue.front());
        queue.pop_front();
        remaining = queue.size();
      }
      SteerReply reply;
      try {
        reply = apply(job.message);
      } catch (const Error& e) {
        reply = error_reply(id, e);
      } catch (const std::exception& e) {
        reply = error_reply(id, Error(ErrorCode::BadMessage, e.what()));
      }
      reply.queue_depth = remaining;
      job.promise.set_value(std::move(reply));
    }
  }

  SteerReply apply(const SteerMessage& m) {
    SteerReply r;
    r.session = id;
    switch (m.verb) {
      case Verb::Key: {
        const std::size_t first = state.frame_count();
        const ActionKey keys[] = {*m.key};
        state = extend_toward_scene(state, keys, kind);
        r.status = "extended";
        fill_frames(r, state, first, state.frame_count());
        break;
      }
      case Verb::Reset:
        state = initial;
        r.status = "reset";
        fill_frames(r, state, 0, state.frame_count());
        break;
      case Verb::Export: {
        const auto dir = export_root / id;
        export_session(state, dir);
        r.status = "exported";
        r.path = dir.string();
        r.frame_first = 0;
        r.frame_end = state.frame_count();
        r.frame_count = state.frame_count();
        break;
      }
      case Verb::Start:
        throw Error(ErrorCode::BadMessage, "start is not valid inside a session");
    }
    return r;
  }
};

SessionService::SessionService(ServiceOptions options) : options_(std::move(options)) { options_.run.validate(); }

SessionService::~SessionService() {
  std::map<std::string, std::shared_ptr<Session>> sessions;
  {
    std::lock_guard lock(mutex_);
    sessions.swap(sessions_);
  }
  for (auto& [id, s] : sessions) {
    {
      std::lock_guard lock(s->mutex);
      s->closing = true;
    }
    s->cv.notify_all();
    s->worker = {};  // joins after draining
  }
}

std::shared_ptr<SessionService::Session> SessionService::find(const std::string& id) const {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::size_t SessionService::session_count() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

std::future<SteerReply> SessionService::submit(const SteerMessage& m) {
  if (m.verb == Verb::Start) {
    try {
      if (!m.image_png) throw Error(ErrorCode::BadMessage, "start needs an image");
      const Rgba8Image image = decode_png(*m.image_png);
      auto s = std::make_shared<Session>();
      s->kind = ConditionKind::parse(m.condition.value_or(options_.run.condition));
      s->initial = start_session(image, default_start_pose(image.height(), image.width()), options_.run.session());
      s->state = s->initial;
      s->export_root = options_.export_root;
      {
        std::lock_guard lock(mutex_);
        s->id = "s" + std::to_string(next_id_++);
        sessions_[s->id] = s;
      }
      s->worker = std::jthread([raw = s.get()] { raw->loop(); });
      SteerReply r;
      r.session = s->id;
      r.status = "started";
      fill_frames(r, s->state, 0, s->state.frame_count());
      return ready(std::move(r));
    } catch (const Error& e) {
      return ready(error_reply("", e));
    }
  }

  const std::string id = m.session.value_or("");
  const auto s = find(id);
  if (!s) return ready(error_reply(id, Error(ErrorCode::UnknownSession, "no session '" + id + "'")));
  if (m.verb == Verb::Key && !m.key) return ready(error_reply(id, Error(ErrorCode::BadMessage, "key needs a key")));

  std::lock_guard lock(s->mutex);
  if (s->closing) return ready(error_reply(id, Error(ErrorCode::UnknownSession, "session '" + id + "' is closing")));
  if (s->queue.size() >= options_.queue_depth) {
    SteerReply r = error_reply(id, Error(ErrorCode::QueueOverflow, "session '" + id + "' already has " +
                                                                       std::to_string(s->queue.size()) + " queued requests"));
    r.queue_depth = s->queue.size();
    return ready(std::move(r));
  }
  Session::Job job{m, {}};
  auto future = job.promise.get_future();
  s->queue.push_back(std::move(job));
  s->cv.notify_one();
  return future;
}

std::future<std::string> SessionService::submit_json(std::string_view payload) {
  SteerMessage m;
  try {
    m = message_from_json(payload);
  } catch (const Error& e) {
    std::promise<std::string> p;
    p.set_value(reply_to_json(error_reply("", e)));
    return p.get_future();
  }
  auto reply = std::make_shared<std::future<SteerReply>>(submit(m));
  return std::async(std::launch::deferred, [reply] { return reply_to_json(reply->get()); });
}

// ---------------------------------------------------------------------------
// TCP transport

namespace {

bool send_all(int fd, std::span<const std::uint8_t> bytes) {
  std::size_t sent = 0;
  while (sent < bytes.size()) {
    const ssize_t n = ::send(fd, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) return false;
    sent += static_cast<std::size_t>(n);
  }
  return true;
}

Error socket_error(const std::string& what) { return Error(ErrorCode::IoError, what + ": " + std::strerror(errno)); }

}  // namespace

TcpServer::TcpServer(SessionService& service, std::uint16_t port, const std::string& host) : service_(service) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw socket_error("socket");
  const int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    throw Error(ErrorCode::IoError, "bad listen address '" + host + "'");
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 || ::listen(listen_fd_, 16) != 0) {
    const Error e = socket_error("bind " + host + ":" + std::to_string(port));
    ::close(listen_fd_);
    throw e;
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TcpServer::~TcpServer() {
  stop();
  handlers_.clear();
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

void TcpServer::run() {
  while (!stopping_) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      break;
    }
    std::lock_guard lock(conn_mutex_);
    if (stopping_) {
      ::close(fd);
      break;
    }
    connections_.push_back(fd);
    handlers_.emplace_back([this, fd] { serve_connection(fd); });
  }
}

void TcpServer::stop() {
  if (stopping_.exchange(true)) return;
  ::shutdown(listen_fd_, SHUT_RDWR);
  std::lock_guard lock(conn_mutex_);
  for (int fd : connections_) ::shutdown(fd, SHUT_RDWR);
}

void TcpServer::serve_connection(int fd) {
  std::mutex m;
  std::condition_variable cv;
  std::deque<std::future<std::string>> pending;
  bool done = false;

  std::jthread writer([&] {
    for (;;) {
      std::future<std::string> next;
      {
        std::unique_lock lock(m);
        cv.wait(lock, [&] { return done || !pending.empty(); });
        if (pending.empty()) return;
        next = std::move(pending.front());
        pending.pop_front();
      }
      const auto framed = frame_payload(next.get());
      if (!send_all(fd, framed)) return;
    }
  });

  FrameReader reader;
  std::vector<std::uint8_t> buf(64 * 1024);
  bool open = true;
  while (open) {
    const ssize_t n = ::recv(fd, buf.data(), buf.size(), 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    reader.feed(std::span(buf.data(), static_cast<std::size_t>(n)));
    try {
      while (auto payload = reader.next()) {
        auto f = service_.submit_json(*payload);
        std::lock_guard lock(m);
        pending.push_back(std::move(f));
        cv.notify_one();
      }
    } catch (const Error& e) {
      std::promise<std::string> p;
      p.set_value(reply_to_json(error_reply("", e)));
      std::lock_guard lock(m);
      pending.push_back(p.get_future());
      cv.notify_one();
      open = false;
    }
  }
  {
    std::lock_guard lock(m);
    done = true;
  }
  cv.notify_one();
  writer.join();
  ::shutdown(fd, SHUT_RDWR);
  {
    std::lock_guard lock(conn_mutex_);
    std::erase(connections_, fd);
  }
  ::close(fd);
}

TcpClient::TcpClient(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &res) != 0 || !res) {
    throw Error(ErrorCode::IoError, "cannot resolve '" + host + "'");
  }
  fd_ = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
  const bool ok = fd_ >= 0 && ::connect(fd_, res->ai_addr, res->ai_addrlen) == 0;
  ::freeaddrinfo(res);
  if (!ok) {
    const Error e = socket_error("connect " + host + ":" + std::to_string(port));
    if (fd_ >= 0) ::close(fd_);
    throw e;
  }
}

TcpClient::~TcpClient() {
  if (fd_ >= 0) ::close(fd_);
}

void TcpClient::send(const SteerMessage& message) { send_raw(message_to_json(message)); }

void TcpClient::send_raw(std::string_view payload) {
  if (!send_all(fd_, frame_payload(payload))) throw socket_error("send");
}

SteerReply TcpClient::receive() {
  std::vector<std::uint8_t> buf(64 * 1024);
  for (;;) {
    if (auto payload = reader_.next()) return reply_from_json(*payload);
    const ssize_t n = ::recv(fd_, buf.data(), buf.size(), 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) throw Error(ErrorCode::IoError, "connection closed");
    reader_.feed(std::span(buf.data(), static_cast<std::size_t>(n)));
  }
}

}  // namespace forgeline
