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
#include <memory>
#include <string>
#include <vector>

#include "processors/generator.hpp"
#include "processors/processor.hpp"

namespace simulstream::processors {

struct StreamAttConfig {
  int cutoff_frames = 2;
  double chunk_s = 1.0;
  std::size_t max_history_words = 40;
  // Emit the whole remaining hypothesis at end of stream.
  bool flush_on_finalize = true;
};

/// Incremental (append-only) decoding with the AlignAtt emission rule: a
/// candidate token is emitted only while its attention peak lies at least
/// `cutoff_frames` frames before the end of the received audio. Emitted text
/// is fed back as a forced prefix; once it exceeds `max_history_words`, the
/// oldest words are dropped and the audio buffer is cut to start at the frame
/// the first retained word was aligned to.
class StreamAttProcessor final : public SpeechProcessor {
 public:
  struct HistoryToken {
    std::string token;
    std::size_t aligned_sample = 0;  // absolute position on the processor timeline
  };

  StreamAttProcessor(StreamAttConfig config, std::shared_ptr<Generator> generator);

  // Fails with kConfig if the generator cannot supply attention.
  void Load() override;
  void SetLanguages(const std::string& source, const std::string& target) override;
  void ClearState() override;
  double PreferredChunkSeconds() const override { return config_.chunk_s; }
  std::vector<IncrementalOutput> ProcessChunk(const AudioChunk& chunk) override;
  std::vector<IncrementalOutput> Finalize() override;

  const std::vector<HistoryToken>& history() const { return history_; }
  std::size_t buffer_start_sample() const { return buffer_start_sample_; }
  std::size_t buffer_samples() const { return buffer_.size(); }

  // Drops the oldest history words beyond the limit and trims the audio
  // buffer accordingly. Runs after every step.
  void PruneHistory();

 private:
  std::vector<IncrementalOutput> Step(long cutoff_frames);

  StreamAttConfig config_;
  std::shared_ptr<Generator> generator_;
  std::string source_lang_;
  std::string target_lang_;

  std::vector<float> buffer_;
  std::size_t buffer_start_sample_ = 0;
  std::vector<HistoryToken> history_;
};

// Number of leading candidates an AlignAtt step may emit: candidates are taken
// in order while their argmax frame is <= frames - 1 - cutoff.
std::size_t AlignAttEmitCount(const AttentionMatrix& attention, std::size_t frames,
                              long cutoff_frames);

// Groups tokens into words; a token opens a new word when it starts with
// whitespace (the first token always does). Returns the start token index of
// each word.
std::vector<std::size_t> WordStarts(const std::vector<std::string>& tokens);

}  // namespace simulstream::processors
