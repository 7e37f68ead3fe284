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

#include <string>
#include <vector>

#include "protocol/audio.hpp"
#include "protocol/messages.hpp"

namespace simulstream::processors {

using protocol::AudioChunk;
using protocol::IncrementalOutput;

/// A streaming speech processor. Instances are owned by one session at a time
/// and need not be thread-safe.
///
/// The caller feeds audio in chunks of PreferredChunkSeconds() (the last chunk
/// of a stream may be shorter), then calls Finalize() once. ClearState()
/// returns the processor to a fresh-stream state; outputs for a stream never
/// depend on streams processed before the last ClearState().
class SpeechProcessor {
 public:
  virtual ~SpeechProcessor() = default;

  // Prepares heavyweight resources. Called once before first use.
  virtual void Load() {}

  // Throws Error(kUnsupportedLanguage) for a pair the processor cannot serve.
  virtual void SetLanguages(const std::string& source, const std::string& target) = 0;

  virtual void ClearState() = 0;

  virtual double PreferredChunkSeconds() const = 0;

  virtual std::vector<IncrementalOutput> ProcessChunk(const AudioChunk& chunk) = 0;

  virtual std::vector<IncrementalOutput> Finalize() = 0;
};

}  // namespace simulstream::processors
