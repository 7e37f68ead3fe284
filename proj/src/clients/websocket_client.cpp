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

#include "clients/websocket_client.hpp"

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/asio/steady_timer.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>
#include <functional>

#include "common/error.hpp"
#include "protocol/audio.hpp"

namespace simulstream::clients {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;
using WebSocket = websocket::stream<tcp::socket>;

Endpoint ParseWebSocketUrl(const std::string& url) {
  const std::string scheme = "ws://";
  if (url.rfind(scheme, 0) != 0) {
    Fail(ErrorCode::kInvalidArgument, "unsupported URL (expected ws://host:port): " + url);
  }
  Endpoint endpoint;
  std::string rest = url.substr(scheme.size());
  const auto slash = rest.find('/');
  if (slash != std::string::npos) {
    endpoint.target = rest.substr(slash);
    rest.resize(slash);
  }
  const auto colon = rest.rfind(':');
  if (colon == std::string::npos) {
    endpoint.host = rest;
    endpoint.port = "80";
  } else {
    endpoint.host = rest.substr(0, colon);
    endpoint.port = rest.substr(colon + 1);
  }
  if (endpoint.host.empty() || endpoint.port.empty()) {
    Fail(ErrorCode::kInvalidArgument, "malformed URL: " + url);
  }
  return endpoint;
}

namespace {

void Connect(asio::io_context& io, WebSocket& ws, const std::string& url) {
  const Endpoint endpoint = ParseWebSocketUrl(url);
  try {
    tcp::resolver resolver(io);
    asio::connect(ws.next_layer(), resolver.resolve(endpoint.host, endpoint.port));
    ws.read_message_max(64 * 1024 * 1024);
    ws.handshake(endpoint.host + ":" + endpoint.port, endpoint.target);
  } catch (const boost::system::system_error& e) {
    Fail(ErrorCode::kIo, "cannot connect to " + url + ": " + e.what());
  }
}

bool IsClosed(const beast::error_code& ec) {
  return ec == websocket::error::closed || ec == asio::error::eof ||
         ec == asio::error::connection_reset || ec == asio::error::broken_pipe;
}

}  // namespace

struct WebSocketClient::Impl {
  asio::io_context io;
  WebSocket ws{io};
  bool closed = false;
};

WebSocketClient::WebSocketClient(const std::string& url) : impl_(std::make_unique<Impl>()) {
  Connect(impl_->io, impl_->ws, url);
}

WebSocketClient::~WebSocketClient() {
  if (impl_) Close();
}

WebSocketClient::WebSocketClient(WebSocketClient&&) noexcept = default;
WebSocketClient& WebSocketClient::operator=(WebSocketClient&&) noexcept = default;

void WebSocketClient::SendText(const std::string& text) {
  beast::error_code ec;
  impl_->ws.text(true);
  impl_->ws.write(asio::buffer(text), ec);
  if (ec) Fail(ErrorCode::kIo, "send failed: " + ec.message());
}

void WebSocketClient::SendConfig(const protocol::SessionConfig& config) {
  SendText(protocol::SerializeMessage(protocol::ConfigMessage{config}));
}

void WebSocketClient::SendEos() { SendText(protocol::SerializeMessage(protocol::EosMessage{})); }

void WebSocketClient::SendAudio(std::span<const float> samples) {
  const auto bytes = protocol::EncodeAudioFrame(samples);
  beast::error_code ec;
  impl_->ws.binary(true);
  impl_->ws.write(asio::buffer(bytes), ec);
  if (ec) Fail(ErrorCode::kIo, "send failed: " + ec.message());
}

std::optional<protocol::ControlMessage> WebSocketClient::Receive() {
  if (impl_->closed) return std::nullopt;
  for (;;) {
    beast::flat_buffer buffer;
    beast::error_code ec;
    impl_->ws.read(buffer, ec);
    if (ec) {
      impl_->closed = true;
      if (IsClosed(ec)) return std::nullopt;
      Fail(ErrorCode::kIo, "receive failed: " + ec.message());
    }
    if (impl_->ws.got_text()) return protocol::ParseMessage(beast::buffers_to_string(buffer.data()));
  }
}

int WebSocketClient::close_code() const { return static_cast<int>(impl_->ws.reason().code); }

void WebSocketClient::Close() {
  if (impl_->closed) return;
  impl_->closed = true;
  beast::error_code ec;
  impl_->ws.close(websocket::close_code::normal, ec);
  if (!ec) {
    // Drain until the server's close frame arrives.
    beast::flat_buffer buffer;
    for (;;) {
      impl_->ws.read(buffer, ec);
      if (ec) break;
      buffer.clear();
    }
  }
  impl_->ws.next_layer().close(ec);
}

StreamingResult RunStreamingSession(const std::string& url, const protocol::SessionConfig& config,
                                    std::span<const float> samples, Pace pace) {
  asio::io_context io;
  WebSocket ws(io);
  Connect(io, ws, url);

  StreamingResult result;
  {
    beast::error_code ec;
    ws.text(true);
    ws.write(asio::buffer(protocol::SerializeMessage(protocol::ConfigMessage{config})), ec);
    if (ec) Fail(ErrorCode::kIo, "send failed: " + ec.message());
  }

  const auto frame_samples = static_cast<std::size_t>(
      protocol::SecondsToSamples(kClientFrameSeconds));
  const std::size_t frames = (samples.size() + frame_samples - 1) / frame_samples;
  const std::string eos = protocol::SerializeMessage(protocol::EosMessage{});
  std::vector<std::uint8_t> frame_bytes;
  asio::steady_timer timer(io);
  bool closed = false;
  std::optional<Error> failure;
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  std::function<void(std::size_t)> send_frame = [&](std::size_t i) {
    if (closed) return;
    if (i == frames) {
      ws.text(true);
      ws.async_write(asio::buffer(eos), [&](beast::error_code ec, std::size_t) {
        if (!ec) result.send_duration_s = elapsed();
      });
      return;
    }
    auto write = [&, i] {
      if (closed) return;
      const std::size_t begin = i * frame_samples;
      const std::size_t count = std::min(frame_samples, samples.size() - begin);
      frame_bytes = protocol::EncodeAudioFrame(samples.subspan(begin, count));
      ws.binary(true);
      ws.async_write(asio::buffer(frame_bytes), [&, i](beast::error_code ec, std::size_t) {
        if (ec) return;
        ++result.frames_sent;
        send_frame(i + 1);
      });
    };
    if (pace == Pace::kRealtime) {
      const std::size_t end_sample = std::min((i + 1) * frame_samples, samples.size());
      timer.expires_at(start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                   std::chrono::duration<double>(
                                       protocol::SamplesToSeconds(end_sample))));
      timer.async_wait([write](beast::error_code ec) {
        if (!ec) write();
      });
    } else {
      asio::post(io, write);
    }
  };

  beast::flat_buffer read_buffer;
  std::function<void()> read_next = [&] {
    ws.async_read(read_buffer, [&](beast::error_code ec, std::size_t) {
      if (ec) {
        closed = true;
        timer.cancel();
        if (ws.reason().code == websocket::close_code::try_again_later) result.refused = true;
        return;
      }
      if (ws.got_text()) {
        try {
          const auto message =
              protocol::ParseMessage(beast::buffers_to_string(read_buffer.data()));
          if (const auto* out = std::get_if<protocol::OutputMessage>(&message)) {
            protocol::ApplyOutput(result.display, out->output);
            result.outputs.push_back(*out);
          } else if (const auto* err = std::get_if<protocol::ErrorMessage>(&message)) {
            result.error = err->reason;
          }
        } catch (const Error& e) {
          failure = e;
          closed = true;
          timer.cancel();
          beast::get_lowest_layer(ws).close(ec);
          return;
        }
      }
      read_buffer.consume(read_buffer.size());
      read_next();
    });
  };

  read_next();
  send_frame(0);
  io.run();
  if (failure) throw *failure;
  return result;
}

}  // namespace simulstream::clients
