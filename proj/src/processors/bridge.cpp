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

#include "processors/bridge.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <boost/beast/core/detail/base64.hpp>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <nlohmann/json.hpp>

#include "common/error.hpp"
#include "protocol/audio.hpp"

extern char** environ;

namespace simulstream::processors {

using nlohmann::json;
namespace base64 = boost::beast::detail::base64;

namespace {

[[noreturn]] void FailErrno(const std::string& what) {
  Fail(ErrorCode::kProcessor, what + ": " + std::strerror(errno));
}

}  // namespace

ChildProcess::ChildProcess(std::vector<std::string> argv) {
  if (argv.empty()) Fail(ErrorCode::kConfig, "bridge command is empty");
  if (argv.size() == 1) argv = {"/bin/sh", "-c", argv.front()};
  // A child that dies mid-write must surface as EPIPE, not kill the process.
  ::signal(SIGPIPE, SIG_IGN);

  int to_child[2];
  int from_child[2];
  if (::pipe2(to_child, O_CLOEXEC) != 0) FailErrno("pipe");
  if (::pipe2(from_child, O_CLOEXEC) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    FailErrno("pipe");
  }

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, to_child[0], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, from_child[1], STDOUT_FILENO);

  std::vector<char*> args;
  for (auto& a : argv) args.push_back(a.data());
  args.push_back(nullptr);
  const int rc = ::posix_spawnp(&pid_, args[0], &actions, nullptr, args.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  ::close(to_child[0]);
  ::close(from_child[1]);
  if (rc != 0) {
    ::close(to_child[1]);
    ::close(from_child[0]);
    Fail(ErrorCode::kProcessor, "cannot start bridge command \"" + argv[0] +
                                    "\": " + std::strerror(rc));
  }
  stdin_fd_ = to_child[1];
  stdout_fd_ = from_child[0];
}

ChildProcess::~ChildProcess() { Terminate(); }

void ChildProcess::Terminate() {
  if (stdin_fd_ >= 0) ::close(stdin_fd_);
  if (stdout_fd_ >= 0) ::close(stdout_fd_);
  stdin_fd_ = stdout_fd_ = -1;
  if (pid_ > 0) {
    // Closing stdin is the shutdown request; give the child a moment.
    for (int i = 0; i < 50; ++i) {
      if (::waitpid(pid_, nullptr, WNOHANG) == pid_) {
        pid_ = -1;
        return;
      }
      ::usleep(2000);
    }
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, nullptr, 0);
    pid_ = -1;
  }
}

void ChildProcess::WriteLine(const std::string& line) {
  std::string data = line + '\n';
  std::size_t written = 0;
  while (written < data.size()) {
    const ssize_t n = ::write(stdin_fd_, data.data() + written, data.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      FailErrno("bridge write failed (child exited?)");
    }
    written += static_cast<std::size_t>(n);
  }
}

std::string ChildProcess::ReadLine(std::chrono::milliseconds timeout) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  for (;;) {
    if (const auto nl = pending_.find('\n'); nl != std::string::npos) {
      std::string line = pending_.substr(0, nl);
      pending_.erase(0, nl + 1);
      return line;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) Fail(ErrorCode::kProcessor, "bridge response timed out");
    pollfd pfd{stdout_fd_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(left.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      FailErrno("bridge poll failed");
    }
    if (ready == 0) continue;
    char buf[65536];
    const ssize_t n = ::read(stdout_fd_, buf, sizeof buf);
    if (n < 0) {
      if (errno == EINTR) continue;
      FailErrno("bridge read failed");
    }
    if (n == 0) Fail(ErrorCode::kProcessor, "bridge child exited");
    pending_.append(buf, static_cast<std::size_t>(n));
  }
}

std::string Base64Encode(const std::vector<std::uint8_t>& bytes) {
  std::string out(base64::encoded_size(bytes.size()), '\0');
  out.resize(base64::encode(out.data(), bytes.data(), bytes.size()));
  return out;
}

std::vector<std::uint8_t> Base64Decode(const std::string& text) {
  std::vector<std::uint8_t> out(base64::decoded_size(text.size()) + 3);
  const auto [written, read] = base64::decode(out.data(), text.data(), text.size());
  std::size_t padding = 0;
  while (read + padding < text.size() && text[read + padding] == '=') ++padding;
  if (read + padding != text.size() || text.size() % 4 != 0) {
    Fail(ErrorCode::kProtocol, "invalid base64 audio payload");
  }
  out.resize(written);
  return out;
}

std::string EncodeBridgeRequest(const GeneratorRequest& request) {
  const json j = {{"audio", Base64Encode(protocol::EncodeAudioFrame(request.audio))},
                  {"sample_rate", protocol::kSampleRateHz},
                  {"window_start_s", request.window_start_s},
                  {"source_lang", request.source_lang},
                  {"target_lang", request.target_lang},
                  {"prefix", request.forced_prefix}};
  return j.dump();
}

GeneratorOutput DecodeBridgeResponse(const std::string& line) {
  auto malformed = [&](const std::string& why) {
    Fail(ErrorCode::kProtocol, "malformed bridge response (" + why + "): " + line);
  };
  const json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) malformed("not a JSON object");
  if (j.contains("error")) {
    Fail(ErrorCode::kProcessor, "bridge child reported: " + j["error"].dump());
  }
  GeneratorOutput out;
  try {
    out.tokens = j.at("tokens").get<std::vector<std::string>>();
    out.frame_duration_s = j.value("frame_duration_s", 0.0);
    if (j.contains("attention") && !j["attention"].is_null()) {
      const auto rows = j["attention"].get<std::vector<std::vector<double>>>();
      if (rows.size() != out.tokens.size()) malformed("attention rows != tokens");
      const std::size_t frames = rows.empty() ? 0 : rows.front().size();
      AttentionMatrix attention(rows.size(), frames);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != frames) malformed("ragged attention");
        for (std::size_t f = 0; f < frames; ++f) attention.at(r, f) = rows[r][f];
      }
      try {
        attention.Validate();
      } catch (const Error& e) {
        malformed(e.what());
      }
      if (!(out.frame_duration_s > 0.0)) malformed("attention without frame_duration_s");
      out.attention = std::move(attention);
    }
  } catch (const json::exception& e) {
    malformed(e.what());
  }
  return out;
}

BridgeGenerator::BridgeGenerator(BridgeConfig config) : config_(std::move(config)) {
  if (!(config_.timeout_s > 0.0)) Fail(ErrorCode::kConfig, "bridge timeout_s must be positive");
  Restart();
}

void BridgeGenerator::Restart() {
  child_.reset();
  child_ = std::make_unique<ChildProcess>(config_.command);
}

GeneratorOutput BridgeGenerator::Generate(const GeneratorRequest& request) {
  if (!child_) Restart();
  try {
    child_->WriteLine(EncodeBridgeRequest(request));
    const auto timeout = std::chrono::milliseconds(
        static_cast<long long>(std::ceil(config_.timeout_s * 1000.0)));
    return DecodeBridgeResponse(child_->ReadLine(timeout));
  } catch (const Error&) {
    // The conversation is out of sync; the next call starts a fresh child.
    child_.reset();
    throw;
  }
}

BridgeProcessor::BridgeProcessor(BridgeProcessorConfig config,
                                 std::shared_ptr<Generator> generator)
    : config_(config), generator_(std::move(generator)) {
  if (!(config_.chunk_s > 0.0)) Fail(ErrorCode::kConfig, "chunk_s must be positive");
  if (!generator_) Fail(ErrorCode::kConfig, "bridge processor needs a generator");
}

void BridgeProcessor::SetLanguages(const std::string& source, const std::string& target) {
  source_lang_ = source;
  target_lang_ = target;
}

void BridgeProcessor::ClearState() {
  audio_.clear();
  audio_start_sample_ = 0;
  emitted_.clear();
}

std::vector<IncrementalOutput> BridgeProcessor::ProcessChunk(const AudioChunk& chunk) {
  audio_.insert(audio_.end(), chunk.samples.begin(), chunk.samples.end());
  if (config_.max_window_s > 0.0) {
    const std::size_t cap = protocol::SecondsToSamples(config_.max_window_s);
    if (audio_.size() > cap) {
      const std::size_t excess = audio_.size() - cap;
      audio_.erase(audio_.begin(), audio_.begin() + static_cast<std::ptrdiff_t>(excess));
      audio_start_sample_ += excess;
    }
  }
  GeneratorRequest request;
  request.audio = audio_;
  request.window_start_s = protocol::SamplesToSeconds(audio_start_sample_);
  request.source_lang = source_lang_;
  request.target_lang = target_lang_;
  request.forced_prefix = emitted_;
  auto generated = generator_->Generate(request);
  if (generated.tokens.empty()) return {};
  emitted_.insert(emitted_.end(), generated.tokens.begin(), generated.tokens.end());
  return {IncrementalOutput{0, std::move(generated.tokens)}};
}

}  // namespace simulstream::processors
