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

#include <chrono>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "protocol/messages.hpp"

namespace simulstream::clients {

struct Endpoint {
  std::string host;
  std::string port;
  std::string target = "/";
};

// Parses ws://host[:port][/path]; the port defaults to 80.
Endpoint ParseWebSocketUrl(const std::string& url);

/// Blocking client for one session. Suited to short exchanges; for long
/// streams use RunStreamingSession, which reads while it sends.
class WebSocketClient {
 public:
  explicit WebSocketClient(const std::string& url);
  ~WebSocketClient();
  WebSocketClient(WebSocketClient&&) noexcept;
  WebSocketClient& operator=(WebSocketClient&&) noexcept;

  void SendConfig(const protocol::SessionConfig& config);
  void SendAudio(std::span<const float> samples);
  void SendEos();
  void SendText(const std::string& text);

  // The next control message, or nullopt once the server has closed.
  std::optional<protocol::ControlMessage> Receive();
  // Close code sent by the server, 0 while open.
  int close_code() const;
  void Close();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

enum class Pace { kRealtime, kMax };

struct StreamingResult {
  std::vector<std::string> display;  // final token buffer
  std::vector<protocol::OutputMessage> outputs;
  std::optional<std::string> error;  // reason from an error frame
  bool refused = false;              // closed with "try again later"
  double send_duration_s = 0.0;      // first frame to end-of-stream
  std::size_t frames_sent = 0;
};

inline constexpr double kClientFrameSeconds = 0.1;

// Streams `samples` in 100 ms binary frames. With kRealtime each frame is
// sent once its last sample would have been captured. Outputs are read
// concurrently until the server closes. Throws Error(kIo) if the server is
// unreachable and Error(kProtocol) on a malformed server message.
StreamingResult RunStreamingSession(const std::string& url, const protocol::SessionConfig& config,
                                    std::span<const float> samples, Pace pace);

}  // namespace simulstream::clients
