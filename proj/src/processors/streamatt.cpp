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

#include "processors/streamatt.hpp"

#include <cctype>

#include "common/error.hpp"

namespace simulstream::processors {

namespace {

bool StartsWithSpace(const std::string& s) {
  return !s.empty() && std::isspace(static_cast<unsigned char>(s.front()));
}

bool EndsWithSpace(const std::string& s) {
  return !s.empty() && std::isspace(static_cast<unsigned char>(s.back()));
}

}  // namespace

std::size_t AlignAttEmitCount(const AttentionMatrix& attention, std::size_t frames,
                              long cutoff_frames) {
  const long limit = static_cast<long>(frames) - 1 - cutoff_frames;
  std::size_t count = 0;
  while (count < attention.rows() &&
         static_cast<long>(attention.ArgmaxFrame(count)) <= limit) {
    ++count;
  }
  return count;
}

std::vector<std::size_t> WordStarts(const std::vector<std::string>& tokens) {
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i == 0 || StartsWithSpace(tokens[i]) || EndsWithSpace(tokens[i - 1])) {
      starts.push_back(i);
    }
  }
  return starts;
}

StreamAttProcessor::StreamAttProcessor(StreamAttConfig config,
                                       std::shared_ptr<Generator> generator)
    : config_(config), generator_(std::move(generator)) {
  if (config_.cutoff_frames < 0) Fail(ErrorCode::kConfig, "cutoff_frames must be >= 0");
  if (!(config_.chunk_s > 0.0)) Fail(ErrorCode::kConfig, "chunk_s must be positive");
  if (config_.max_history_words < 1) {
    Fail(ErrorCode::kConfig, "max_history_words must be >= 1");
  }
  if (!generator_) Fail(ErrorCode::kConfig, "streamatt needs a generator");
}

void StreamAttProcessor::Load() {
  if (!generator_->ProvidesAttention()) {
    Fail(ErrorCode::kConfig, "streamatt generator does not provide attention");
  }
}

void StreamAttProcessor::SetLanguages(const std::string& source, const std::string& target) {
  source_lang_ = source;
  target_lang_ = target;
}

void StreamAttProcessor::ClearState() {
  buffer_.clear();
  buffer_start_sample_ = 0;
  history_.clear();
}

std::vector<IncrementalOutput> StreamAttProcessor::ProcessChunk(const AudioChunk& chunk) {
  buffer_.insert(buffer_.end(), chunk.samples.begin(), chunk.samples.end());
  return Step(config_.cutoff_frames);
}

std::vector<IncrementalOutput> StreamAttProcessor::Finalize() {
  if (!config_.flush_on_finalize) return {};
  return Step(0);
}

std::vector<IncrementalOutput> StreamAttProcessor::Step(long cutoff_frames) {
  if (buffer_.empty()) return {};

  GeneratorRequest request;
  request.audio = buffer_;
  request.window_start_s = protocol::SamplesToSeconds(buffer_start_sample_);
  request.source_lang = source_lang_;
  request.target_lang = target_lang_;
  request.forced_prefix.reserve(history_.size());
  for (const auto& h : history_) request.forced_prefix.push_back(h.token);

  GeneratorOutput generated = generator_->Generate(request);
  if (!generated.attention) {
    Fail(ErrorCode::kProcessor, "generator returned no attention");
  }
  const AttentionMatrix& attention = *generated.attention;
  if (attention.rows() != generated.tokens.size()) {
    Fail(ErrorCode::kProcessor, "attention rows do not match the token count");
  }
  const std::size_t frame_samples = protocol::SecondsToSamples(generated.frame_duration_s);

  const std::size_t emit = AlignAttEmitCount(attention, attention.frames(), cutoff_frames);
  IncrementalOutput out;
  for (std::size_t i = 0; i < emit; ++i) {
    const std::size_t aligned =
        buffer_start_sample_ + attention.ArgmaxFrame(i) * frame_samples;
    history_.push_back({generated.tokens[i], aligned});
    out.append_tokens.push_back(generated.tokens[i]);
  }
  PruneHistory();
  if (out.empty()) return {};
  return {std::move(out)};
}

void StreamAttProcessor::PruneHistory() {
  std::vector<std::string> tokens;
  tokens.reserve(history_.size());
  for (const auto& h : history_) tokens.push_back(h.token);
  const auto starts = WordStarts(tokens);
  if (starts.size() <= config_.max_history_words) return;

  const std::size_t first_kept = starts[starts.size() - config_.max_history_words];
  history_.erase(history_.begin(), history_.begin() + static_cast<std::ptrdiff_t>(first_kept));

  const std::size_t new_start = history_.front().aligned_sample;
  if (new_start > buffer_start_sample_) {
    const std::size_t cut = std::min(new_start - buffer_start_sample_, buffer_.size());
    buffer_.erase(buffer_.begin(), buffer_.begin() + static_cast<std::ptrdiff_t>(cut));
    buffer_start_sample_ += cut;
  }
}

}  // namespace simulstream::processors
