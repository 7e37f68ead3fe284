// Copyright 2026 The simulstream-cpp Authors
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
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "processors/factory.hpp"
#include "protocol/metric_log.hpp"
#include "server/processor_pool.hpp"

namespace simulstream::server {

struct ServerConfig {
  std::string host = "127.0.0.1";
  std::uint16_t port = 8080;  // 0 picks a free port
  std::size_t pool_size = 1;
  std::optional<std::filesystem::path> log_path;
  std::filesystem::path processor_config_path;
};

// Reads `host`, `port`, `pool_size` and `log_path` from the server YAML. A
// relative log_path resolves against the YAML file's directory.
ServerConfig LoadServerConfig(const std::filesystem::path& server_yaml,
                              const std::filesystem::path& processor_yaml);

/// WebSocket front end over a fixed processor pool. Each connection is served
/// on its own thread; when every processor is busy, a new connection gets an
/// error frame and is closed.
class Server {
 public:
  explicit Server(ServerConfig config);
  Server(ServerConfig config, const processors::ProcessorFactory& factory);
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and starts accepting. Throws Error(kIo) if the address is unusable.
  void Start();
  // Stops accepting, disconnects live sessions and joins every thread.
  void Stop();
  // Blocks until Stop() has finished.
  void Wait();

  std::uint16_t port() const { return bound_port_; }
  const ProcessorPool& pool() const { return *pool_; }
  std::size_t sessions_served() const { return sessions_served_; }

 private:
  struct Impl;
  struct Connection {
    std::thread thread;
    std::atomic<int> fd{-1};
    std::atomic<bool> done{false};
  };

  void AcceptLoop();
  void HandleSession(Connection& connection, int fd);
  void ReapFinished();

  ServerConfig config_;
  std::unique_ptr<ProcessorPool> pool_;
  std::unique_ptr<protocol::MetricLogWriter> log_;
  std::unique_ptr<Impl> impl_;
  std::uint16_t bound_port_ = 0;

  std::thread accept_thread_;
  std::mutex connections_mutex_;
  std::list<Connection> connections_;
  std::atomic<bool> stopping_{false};
  std::atomic<std::size_t> sessions_served_{0};

  std::mutex state_mutex_;
  std::condition_variable stopped_cv_;
  bool stopped_ = false;
  bool joined_ = false;
  bool started_ = false;
};

}  // namespace simulstream::server
