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

#include <memory>
#include <string>
#include <vector>

#include "processors/generator.hpp"
#include "processors/processor.hpp"

namespace simulstream::processors {

struct SlidingWindowConfig {
  double window_s = 8.0;
  double stride_s = 2.0;
};

/// Retranslation over a fixed-length window that advances by `stride_s`.
///
/// Each generation is aligned against the previous hypothesis with an LCS.
/// Displayed tokens after the last matched previous token are deleted and the
/// current hypothesis after its matched position is appended. When the window
/// drops audio from its front, the matching share of the previous hypothesis
/// becomes committed and is never deleted afterwards.
class SlidingWindowProcessor final : public SpeechProcessor {
 public:
  SlidingWindowProcessor(SlidingWindowConfig config, std::shared_ptr<Generator> generator);

  void SetLanguages(const std::string& source, const std::string& target) override;
  void ClearState() override;
  double PreferredChunkSeconds() const override { return config_.stride_s; }

  // Generates once a full stride of new audio is pending.
  std::vector<IncrementalOutput> ProcessChunk(const AudioChunk& chunk) override;

  // Generates on the final partial window if audio is still pending, then
  // commits everything.
  std::vector<IncrementalOutput> Finalize() override;

  const std::vector<std::string>& display() const { return display_; }
  std::size_t committed_count() const { return committed_; }

 private:
  std::vector<IncrementalOutput> Step();
  void CommitLeavingShare(std::size_t dropped_samples, std::size_t window_samples);

  SlidingWindowConfig config_;
  std::shared_ptr<Generator> generator_;
  std::string source_lang_;
  std::string target_lang_;

  std::vector<float> window_;
  std::size_t window_start_sample_ = 0;
  std::size_t pending_samples_ = 0;
  // Window length and front drop accumulated since the last generation.
  std::size_t generated_window_samples_ = 0;
  std::size_t dropped_since_generation_ = 0;

  std::vector<std::string> previous_;
  std::vector<std::string> display_;
  std::size_t committed_ = 0;
  // For each revisable display token (display_[committed_ + k]), its index in
  // previous_, or -1 once its match was lost.
  std::vector<long> links_;
};

}  // namespace simulstream::processors
