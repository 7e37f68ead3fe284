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
#include <span>
#include <string>
#include <vector>

#include "processors/processor.hpp"

namespace simulstream::processors {

// Full-scale RMS that maps to a speech score of 1.
inline constexpr double kVadReferenceRms = 0.05;

// min(1, rms / kVadReferenceRms)
double SpeechScore(std::span<const float> frame);

/// Piecewise map from the filtered (speech-only) timeline back to the
/// original stream, in samples.
class TimeMap {
 public:
  void Append(std::size_t original_start, std::size_t length);
  void Clear();

  std::size_t filtered_length() const { return filtered_length_; }
  // Original-stream sample for a filtered position in [0, filtered_length()].
  std::size_t ToOriginal(std::size_t filtered) const;
  double ToOriginalSeconds(double filtered_s) const;

 private:
  struct Span {
    std::size_t filtered_start;
    std::size_t original_start;
    std::size_t length;
  };
  std::vector<Span> spans_;
  std::size_t filtered_length_ = 0;
};

struct VadConfig {
  double threshold = 0.5;
  double frame_ms = 30.0;
  int hangover_frames = 5;
  double chunk_s = 0.0;  // 0 uses the inner processor's preferred size
};

/// Drops non-speech frames and forwards the rest to an inner processor in
/// chunks of the inner processor's preferred size.
class VadProcessor final : public SpeechProcessor {
 public:
  VadProcessor(VadConfig config, std::unique_ptr<SpeechProcessor> inner);

  void Load() override { inner_->Load(); }
  void SetLanguages(const std::string& source, const std::string& target) override {
    inner_->SetLanguages(source, target);
  }
  void ClearState() override;
  double PreferredChunkSeconds() const override;
  std::vector<IncrementalOutput> ProcessChunk(const AudioChunk& chunk) override;
  std::vector<IncrementalOutput> Finalize() override;

  const TimeMap& time_map() const { return time_map_; }
  std::size_t forwarded_samples() const { return forwarded_samples_; }

 private:
  void ClassifyFrame(std::span<const float> frame);
  std::vector<IncrementalOutput> Forward(bool flush);

  VadConfig config_;
  std::unique_ptr<SpeechProcessor> inner_;
  std::size_t frame_samples_;

  std::vector<float> partial_frame_;
  std::vector<float> speech_;
  std::size_t original_position_ = 0;
  std::size_t forwarded_samples_ = 0;
  int hangover_left_ = 0;
  TimeMap time_map_;
};

}  // namespace simulstream::processors
