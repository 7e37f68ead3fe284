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

#include "server/server.hpp"

#include <sys/socket.h>
#include <yaml-cpp/yaml.h>

#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>
#include <iostream>

#include "common/error.hpp"
#include "protocol/audio.hpp"
#include "protocol/messages.hpp"
#include "server/session_driver.hpp"

namespace simulstream::server {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

ServerConfig LoadServerConfig(const std::filesystem::path& server_yaml,
                              const std::filesystem::path& processor_yaml) {
  ServerConfig config;
  config.processor_config_path = processor_yaml;
  try {
    const YAML::Node node = YAML::LoadFile(server_yaml.string());
    if (node["host"]) config.host = node["host"].as<std::string>();
    if (node["port"]) config.port = node["port"].as<std::uint16_t>();
    if (node["pool_size"]) {
      const long pool = node["pool_size"].as<long>();
      if (pool < 1) Fail(ErrorCode::kConfig, "pool_size must be >= 1");
      config.pool_size = static_cast<std::size_t>(pool);
    }
    if (node["log_path"] && !node["log_path"].IsNull()) {
      std::filesystem::path log = node["log_path"].as<std::string>();
      config.log_path = log.is_relative() ? server_yaml.parent_path() / log : log;
    }
  } catch (const YAML::Exception& e) {
    Fail(ErrorCode::kConfig, "invalid server config " + server_yaml.string() + ": " + e.what());
  }
  return config;
}

struct Server::Impl {
  asio::io_context io;
  tcp::acceptor acceptor{io};
  tcp protocol = tcp::v4();
};

namespace {

std::vector<std::unique_ptr<processors::SpeechProcessor>> BuildPool(
    const processors::ProcessorFactory& factory, std::size_t size) {
  if (size < 1) Fail(ErrorCode::kConfig, "pool_size must be >= 1");
  std::vector<std::unique_ptr<processors::SpeechProcessor>> processors;
  for (std::size_t i = 0; i < size; ++i) processors.push_back(factory.Create());
  return processors;
}

using WebSocket = websocket::stream<tcp::socket>;

void SendErrorAndClose(WebSocket& ws, const std::string& reason,
                       websocket::close_code code = websocket::close_code::policy_error) {
  beast::error_code ec;
  ws.text(true);
  ws.write(asio::buffer(protocol::SerializeMessage(protocol::ErrorMessage{reason})), ec);
  if (!ec) ws.close(websocket::close_reason(code), ec);
}

}  // namespace

Server::Server(ServerConfig config)
    : Server(config, processors::ProcessorFactory(config.processor_config_path)) {}

Server::Server(ServerConfig config, const processors::ProcessorFactory& factory)
    : config_(std::move(config)),
      pool_(std::make_unique<ProcessorPool>(BuildPool(factory, config_.pool_size))),
      impl_(std::make_unique<Impl>()) {
  if (config_.log_path) log_ = std::make_unique<protocol::MetricLogWriter>(*config_.log_path);
}

Server::~Server() { Stop(); }

void Server::Start() {
  {
    std::lock_guard lock(state_mutex_);
    if (started_) return;
    started_ = true;
  }
  try {
    const tcp::endpoint endpoint(asio::ip::make_address(config_.host), config_.port);
    impl_->protocol = endpoint.protocol();
    impl_->acceptor.open(endpoint.protocol());
    impl_->acceptor.set_option(asio::socket_base::reuse_address(true));
    impl_->acceptor.bind(endpoint);
    impl_->acceptor.listen(asio::socket_base::max_listen_connections);
    bound_port_ = impl_->acceptor.local_endpoint().port();
  } catch (const std::exception& e) {
    Fail(ErrorCode::kIo, "cannot listen on " + config_.host + ":" +
                             std::to_string(config_.port) + ": " + e.what());
  }
  accept_thread_ = std::thread([this] { AcceptLoop(); });
}

void Server::AcceptLoop() {
  while (!stopping_) {
    beast::error_code ec;
    tcp::socket socket = impl_->acceptor.accept(ec);
    if (ec) {
      if (stopping_) break;
      continue;
    }
    ReapFinished();
    std::lock_guard lock(connections_mutex_);
    Connection& connection = connections_.emplace_back();
    const int fd = socket.release();
    connection.fd = fd;
    connection.thread = std::thread([this, &connection, fd] {
      HandleSession(connection, fd);
      connection.done = true;
    });
  }
}

void Server::HandleSession(Connection& connection, int fd) {
  tcp::socket socket(impl_->io);
  beast::error_code ec;
  socket.assign(impl_->protocol, fd, ec);
  if (ec) return;
  WebSocket ws(std::move(socket));
  ws.read_message_max(64 * 1024 * 1024);

  auto serve = [&] {
    ws.accept();
    std::optional<ProcessorLease> lease = pool_->TryAcquire();
    if (!lease) {
      SendErrorAndClose(ws,
                        "server busy: all " + std::to_string(pool_->size()) +
                            " speech processors are in use, connection refused",
                        websocket::close_code::try_again_later);
      return;
    }
    ++sessions_served_;

    beast::flat_buffer buffer;
    ws.read(buffer);
    if (!ws.got_text()) {
      SendErrorAndClose(ws, "audio received before the config message");
      return;
    }
    protocol::SessionConfig session;
    try {
      const auto message = protocol::ParseMessage(beast::buffers_to_string(buffer.data()));
      const auto* config = std::get_if<protocol::ConfigMessage>(&message);
      if (!config) {
        SendErrorAndClose(ws, "first message must be a config message");
        return;
      }
      session = config->config;
      (*lease)->SetLanguages(session.source_lang, session.target_lang);
      (*lease)->ClearState();
    } catch (const Error& e) {
      SendErrorAndClose(ws, e.what());
      return;
    }

    bool connected = true;
    auto send_output = [&](const protocol::IncrementalOutput& out, double audio_s) {
      if (!connected) return;
      beast::error_code write_ec;
      ws.text(true);
      ws.write(asio::buffer(protocol::SerializeMessage(protocol::OutputMessage{out, audio_s})),
               write_ec);
      if (write_ec) connected = false;
    };
    SessionDriver driver(**lease, session.audio_id, log_.get(), send_output);

    try {
      for (;;) {
        buffer.clear();
        beast::error_code read_ec;
        ws.read(buffer, read_ec);
        if (read_ec) {
          connected = false;
          break;
        }
        if (!ws.got_text()) {
          const auto* data = static_cast<const std::uint8_t*>(buffer.data().data());
          const auto samples =
              protocol::DecodeAudioFrame(std::span<const std::uint8_t>(data, buffer.size()));
          driver.Feed(samples);
          continue;
        }
        const auto message = protocol::ParseMessage(beast::buffers_to_string(buffer.data()));
        if (std::holds_alternative<protocol::EosMessage>(message)) break;
        SendErrorAndClose(ws, "unexpected control message after config");
        return;
      }
      driver.Finish();
    } catch (const Error& e) {
      if (connected) SendErrorAndClose(ws, std::string("processing failed: ") + e.what());
      return;
    }
    if (connected) ws.close(websocket::close_code::normal, ec);
  };

  try {
    serve();
  } catch (const std::exception& e) {
    if (!stopping_) std::cerr << "simulstream: session ended: " << e.what() << '\n';
  }
  std::lock_guard lock(connections_mutex_);
  connection.fd = -1;
  beast::get_lowest_layer(ws).close(ec);
}

void Server::ReapFinished() {
  std::lock_guard lock(connections_mutex_);
  for (auto it = connections_.begin(); it != connections_.end();) {
    if (it->done) {
      it->thread.join();
      it = connections_.erase(it);
    } else {
      ++it;
    }
  }
}

void Server::Stop() {
  {
    std::lock_guard lock(state_mutex_);
    if (!started_ || stopped_) return;
    stopped_ = true;
  }
  stopping_ = true;
  ::shutdown(impl_->acceptor.native_handle(), SHUT_RDWR);
  if (accept_thread_.joinable()) accept_thread_.join();
  beast::error_code ec;
  impl_->acceptor.close(ec);
  {
    std::lock_guard lock(connections_mutex_);
    for (auto& connection : connections_) {
      const int fd = connection.fd;
      if (fd >= 0) ::shutdown(fd, SHUT_RDWR);
    }
  }
  // Session threads take the connections lock on exit, so join unlocked.
  for (auto& connection : connections_) {
    if (connection.thread.joinable()) connection.thread.join();
  }
  connections_.clear();
  {
    std::lock_guard lock(state_mutex_);
    joined_ = true;
  }
  stopped_cv_.notify_all();
}

void Server::Wait() {
  std::unique_lock lock(state_mutex_);
  stopped_cv_.wait(lock, [this] { return joined_; });
}

}  // namespace simulstream::server
