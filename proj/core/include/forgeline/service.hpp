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

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "forgeline/config.hpp"
#include "forgeline/error.hpp"
#include "forgeline/protocol.hpp"

namespace forgeline {

struct ServiceOptions {
  RunConfig run;
  std::filesystem::path export_root = "sessions";
  std::size_t queue_depth = kSessionQueueDepth;
};

/// Transport-agnostic session manager. Each session owns a worker thread
/// that applies its requests strictly in submission order; different
/// sessions progress concurrently. Errors come back as replies with
/// status "error", never as exceptions.
class SessionService {
 public:
  explicit SessionService(ServiceOptions options);
  ~SessionService();
  SessionService(const SessionService&) = delete;
  SessionService& operator=(const SessionService&) = delete;

  std::future<SteerReply> submit(const SteerMessage& message);
  SteerReply handle(const SteerMessage& message) { return submit(message).get(); }

  /// Parses, dispatches and serializes; malformed input yields a BadMessage
  /// reply.
  std::future<std::string> submit_json(std::string_view payload);

  std::size_t session_count() const;
  const ServiceOptions& options() const noexcept { return options_; }

 private:
  struct Session;
  std::shared_ptr<Session> find(const std::string& id) const;

  ServiceOptions options_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 1;
};

SteerReply error_reply(const std::string& session, const Error& error);

/// Blocking TCP front end speaking the framed protocol. Replies on a
/// connection are written in request order.
class TcpServer {
 public:
  /// Binds 127.0.0.1:port (0 picks a free port).
  TcpServer(SessionService& service, std::uint16_t port, const std::string& host = "127.0.0.1");
  ~TcpServer();
  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  std::uint16_t port() const noexcept { return port_; }
  /// Accept loop; returns after stop().
  void run();
  void stop();

 private:
  void serve_connection(int fd);

  SessionService& service_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::mutex conn_mutex_;
  std::vector<int> connections_;
  std::vector<std::jthread> handlers_;
};

/// Minimal blocking client for tests and scripted sessions.
class TcpClient {
 public:
  TcpClient(const std::string& host, std::uint16_t port);
  ~TcpClient();
  TcpClient(const TcpClient&) = delete;
  TcpClient& operator=(const TcpClient&) = delete;

  void send(const SteerMessage& message);
  void send_raw(std::string_view payload);
  SteerReply receive();
  SteerReply request(const SteerMessage& message) {
    send(message);
    return receive();
  }

 private:
  int fd_ = -1;
  FrameReader reader_;
};

}  // namespace forgeline
