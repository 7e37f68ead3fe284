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

#include <sys/types.h>

#include <chrono>
#include <memory>
#include <string>
#include <vector>

#include "processors/generator.hpp"
#include "processors/processor.hpp"

namespace simulstream::processors {

/// A child process talking newline-delimited text over its stdin/stdout.
/// stderr is inherited.
class ChildProcess {
 public:
  explicit ChildProcess(std::vector<std::string> argv);
  ~ChildProcess();

  ChildProcess(const ChildProcess&) = delete;
  ChildProcess& operator=(const ChildProcess&) = delete;

  void WriteLine(const std::string& line);
  // Throws Error(kProcessor) on timeout or end of output.
  std::string ReadLine(std::chrono::milliseconds timeout);

 private:
  void Terminate();

  pid_t pid_ = -1;
  int stdin_fd_ = -1;
  int stdout_fd_ = -1;
  std::string pending_;
};

/// Bridge wire format, one JSON object per line in each direction:
///   request:  {"audio": base64 PCM16LE, "sample_rate": 16000,
///              "window_start_s": x, "source_lang": s, "target_lang": t,
///              "prefix": [tokens]}
///   response: {"tokens": [...], "attention": [[...], ...] (optional),
///              "frame_duration_s": x}  or  {"error": "reason"}
std::string EncodeBridgeRequest(const GeneratorRequest& request);
// Throws Error(kProtocol) quoting the offending line.
GeneratorOutput DecodeBridgeResponse(const std::string& line);

std::string Base64Encode(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> Base64Decode(const std::string& text);

struct BridgeConfig {
  // A single element runs through /bin/sh -c; more elements exec directly.
  std::vector<std::string> command;
  double timeout_s = 30.0;
  bool attention = false;  // whether the child is expected to return attention
};

class BridgeGenerator final : public Generator {
 public:
  explicit BridgeGenerator(BridgeConfig config);

  GeneratorOutput Generate(const GeneratorRequest& request) override;
  bool ProvidesAttention() const override { return config_.attention; }

 private:
  void Restart();

  BridgeConfig config_;
  std::unique_ptr<ChildProcess> child_;
};

struct BridgeProcessorConfig {
  double chunk_s = 1.0;
  double max_window_s = 0.0;  // 0 keeps the whole stream
};

/// Agent-style wrapper around an external system: every chunk, the child sees
/// the stream so far (optionally capped) plus everything already emitted, and
/// answers with the tokens to append.
class BridgeProcessor final : public SpeechProcessor {
 public:
  BridgeProcessor(BridgeProcessorConfig config, std::shared_ptr<Generator> generator);

  void SetLanguages(const std::string& source, const std::string& target) override;
  void ClearState() override;
  double PreferredChunkSeconds() const override { return config_.chunk_s; }
  std::vector<IncrementalOutput> ProcessChunk(const AudioChunk& chunk) override;
  std::vector<IncrementalOutput> Finalize() override { return {}; }

 private:
  BridgeProcessorConfig config_;
  std::shared_ptr<Generator> generator_;
  std::string source_lang_;
  std::string target_lang_;
  std::vector<float> audio_;
  std::size_t audio_start_sample_ = 0;
  std::vector<std::string> emitted_;
};

}  // namespace simulstream::processors
