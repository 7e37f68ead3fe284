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

#include "processors/vad.hpp"

#include <algorithm>
#include <cmath>

#include "common/error.hpp"

namespace simulstream::processors {

double SpeechScore(std::span<const float> frame) {
  if (frame.empty()) return 0.0;
  double energy = 0.0;
  for (float s : frame) energy += static_cast<double>(s) * s;
  const double rms = std::sqrt(energy / static_cast<double>(frame.size()));
  return std::min(1.0, rms / kVadReferenceRms);
}

void TimeMap::Append(std::size_t original_start, std::size_t length) {
  if (length == 0) return;
  if (!spans_.empty()) {
    Span& last = spans_.back();
    if (last.original_start + last.length == original_start) {
      last.length += length;
      filtered_length_ += length;
      return;
    }
  }
  spans_.push_back({filtered_length_, original_start, length});
  filtered_length_ += length;
}

void TimeMap::Clear() {
  spans_.clear();
  filtered_length_ = 0;
}

std::size_t TimeMap::ToOriginal(std::size_t filtered) const {
  if (spans_.empty()) return 0;
  if (filtered >= filtered_length_) {
    const Span& last = spans_.back();
    return last.original_start + last.length;
  }
  auto it = std::upper_bound(spans_.begin(), spans_.end(), filtered,
                             [](std::size_t f, const Span& s) { return f < s.filtered_start; });
  const Span& span = *std::prev(it);
  return span.original_start + (filtered - span.filtered_start);
}

double TimeMap::ToOriginalSeconds(double filtered_s) const {
  return protocol::SamplesToSeconds(ToOriginal(protocol::SecondsToSamples(filtered_s)));
}

VadProcessor::VadProcessor(VadConfig config, std::unique_ptr<SpeechProcessor> inner)
    : config_(config),
      inner_(std::move(inner)),
      frame_samples_(protocol::SecondsToSamples(config.frame_ms / 1000.0)) {
  if (!(config_.threshold >= 0.0 && config_.threshold <= 1.0)) {
    Fail(ErrorCode::kConfig, "vad threshold must lie in [0, 1]");
  }
  if (frame_samples_ == 0) Fail(ErrorCode::kConfig, "vad frame_ms is too small");
  if (config_.hangover_frames < 0) Fail(ErrorCode::kConfig, "hangover_frames must be >= 0");
  if (!inner_) Fail(ErrorCode::kConfig, "vad needs an inner processor");
}

void VadProcessor::ClearState() {
  inner_->ClearState();
  partial_frame_.clear();
  speech_.clear();
  original_position_ = 0;
  forwarded_samples_ = 0;
  hangover_left_ = 0;
  time_map_.Clear();
}

double VadProcessor::PreferredChunkSeconds() const {
  return config_.chunk_s > 0.0 ? config_.chunk_s : inner_->PreferredChunkSeconds();
}

void VadProcessor::ClassifyFrame(std::span<const float> frame) {
  bool speech = SpeechScore(frame) >= config_.threshold;
  if (speech) {
    hangover_left_ = config_.hangover_frames;
  } else if (hangover_left_ > 0) {
    --hangover_left_;
    speech = true;
  }
  if (speech) {
    time_map_.Append(original_position_, frame.size());
    speech_.insert(speech_.end(), frame.begin(), frame.end());
  }
  original_position_ += frame.size();
}

std::vector<IncrementalOutput> VadProcessor::ProcessChunk(const AudioChunk& chunk) {
  partial_frame_.insert(partial_frame_.end(), chunk.samples.begin(), chunk.samples.end());
  std::size_t offset = 0;
  while (partial_frame_.size() - offset >= frame_samples_) {
    ClassifyFrame(std::span<const float>(partial_frame_).subspan(offset, frame_samples_));
    offset += frame_samples_;
  }
  partial_frame_.erase(partial_frame_.begin(),
                       partial_frame_.begin() + static_cast<std::ptrdiff_t>(offset));
  return Forward(/*flush=*/false);
}

std::vector<IncrementalOutput> VadProcessor::Finalize() {
  if (!partial_frame_.empty()) {
    ClassifyFrame(partial_frame_);
    partial_frame_.clear();
  }
  auto outputs = Forward(/*flush=*/true);
  auto tail = inner_->Finalize();
  outputs.insert(outputs.end(), tail.begin(), tail.end());
  return outputs;
}

std::vector<IncrementalOutput> VadProcessor::Forward(bool flush) {
  std::vector<IncrementalOutput> outputs;
  const std::size_t chunk = std::max<std::size_t>(
      1, protocol::SecondsToSamples(inner_->PreferredChunkSeconds()));
  std::size_t offset = 0;
  auto send = [&](std::size_t length) {
    AudioChunk piece;
    piece.samples.assign(speech_.begin() + static_cast<std::ptrdiff_t>(offset),
                         speech_.begin() + static_cast<std::ptrdiff_t>(offset + length));
    piece.stream_offset_s = protocol::SamplesToSeconds(forwarded_samples_);
    auto produced = inner_->ProcessChunk(piece);
    outputs.insert(outputs.end(), produced.begin(), produced.end());
    forwarded_samples_ += length;
    offset += length;
  };
  while (speech_.size() - offset >= chunk) send(chunk);
  if (flush && speech_.size() > offset) send(speech_.size() - offset);
  speech_.erase(speech_.begin(), speech_.begin() + static_cast<std::ptrdiff_t>(offset));
  return outputs;
}

}  // namespace simulstream::processors
