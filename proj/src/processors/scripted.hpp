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

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "processors/generator.hpp"
#include "processors/processor.hpp"

namespace simulstream::processors {

/// Deterministic stand-in for a model. A script is a JSON document:
///
///   {"entries": [{"start": 0.0, "end": 1.2, "tokens": ["Hello", " world"],
///                 "align": [0.5, 1.1]}, ...],
///    "steps":   [{"delete": 0, "append": ["a"]}, ...]}
///
/// Entry times are seconds on the consumer's timeline; `align` (optional)
/// gives one attention peak per token and defaults to the entry end.
/// `steps` is only used by ScriptedProcessor in replay mode.
struct Script {
  struct Entry {
    double start_s = 0.0;
    double end_s = 0.0;
    std::vector<std::string> tokens;
    std::vector<double> align_s;  // same length as tokens after loading
  };
  std::vector<Entry> entries;  // sorted by start_s
  std::vector<IncrementalOutput> steps;

  static Script FromJson(const std::string& text);
  static Script FromFile(const std::filesystem::path& path);
};

// Removes the part of `tokens` already covered by the tail of `prefix`.
std::vector<std::string> StripForcedPrefix(const std::vector<std::string>& tokens,
                                           const std::vector<std::string>& prefix);

class ScriptedGenerator final : public Generator {
 public:
  explicit ScriptedGenerator(Script script, double frame_duration_s = 0.08);

  // Tokens of every entry lying fully inside the window, minus the forced
  // prefix, with attention rows peaking at each token's alignment frame.
  GeneratorOutput Generate(const GeneratorRequest& request) override;
  bool ProvidesAttention() const override { return true; }

  double frame_duration_s() const { return frame_duration_s_; }

 private:
  Script script_;
  double frame_duration_s_;
};

struct ScriptedProcessorConfig {
  double chunk_s = 1.0;
  std::vector<std::string> languages;  // empty accepts any language
  std::optional<int> fail_on_chunk;    // 1-based; test hook for error paths
};

/// Test double that reads outputs straight from a script. With `steps` it
/// replays them one per chunk; otherwise it appends each entry's tokens once
/// the audio consumed so far reaches the entry end.
class ScriptedProcessor final : public SpeechProcessor {
 public:
  ScriptedProcessor(Script script, ScriptedProcessorConfig config);

  void SetLanguages(const std::string& source, const std::string& target) override;
  void ClearState() override;
  double PreferredChunkSeconds() const override { return config_.chunk_s; }
  std::vector<IncrementalOutput> ProcessChunk(const AudioChunk& chunk) override;
  std::vector<IncrementalOutput> Finalize() override;

 private:
  std::vector<IncrementalOutput> EmitReady();

  Script script_;
  ScriptedProcessorConfig config_;
  std::size_t consumed_samples_ = 0;
  std::size_t next_entry_ = 0;
  int chunks_seen_ = 0;
};

}  // namespace simulstream::processors
