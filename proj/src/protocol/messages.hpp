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

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace simulstream::protocol {

/// One revision of the displayed text: drop `delete_count` tokens from the
/// tail, then append `append_tokens`. Tokens keep their own leading
/// whitespace, so the display text is the plain concatenation of tokens.
struct IncrementalOutput {
  std::size_t delete_count = 0;
  std::vector<std::string> append_tokens;

  bool empty() const { return delete_count == 0 && append_tokens.empty(); }
  bool operator==(const IncrementalOutput&) const = default;
};

// Folds several consecutive outputs into one with the same net effect on any
// display that can absorb them.
IncrementalOutput Compose(const std::vector<IncrementalOutput>& outputs);

// Applies `out` to `display`. Throws Error(kStructure) on underflow.
void ApplyOutput(std::vector<std::string>& display, const IncrementalOutput& out);

std::string JoinTokens(const std::vector<std::string>& tokens);

// Whitespace split of `text`; empty pieces are dropped.
std::vector<std::string> SplitWords(std::string_view text);

struct SessionConfig {
  std::string source_lang;
  std::string target_lang;
  std::string audio_id;

  bool operator==(const SessionConfig&) const = default;
};

// Wire control messages carried in WebSocket text frames.
struct ConfigMessage {
  SessionConfig config;
};
struct OutputMessage {
  IncrementalOutput output;
  double audio_processed_s = 0.0;
};
struct ErrorMessage {
  std::string reason;
};
struct EosMessage {};

using ControlMessage =
    std::variant<ConfigMessage, OutputMessage, ErrorMessage, EosMessage>;

std::string SerializeMessage(const ControlMessage& message);

// Throws Error(kProtocol) for malformed JSON, unknown `type`, or missing keys.
ControlMessage ParseMessage(std::string_view text);

}  // namespace simulstream::protocol
