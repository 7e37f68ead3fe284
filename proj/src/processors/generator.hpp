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
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace simulstream::processors {

/// Row-major token x frame attention weights.
class AttentionMatrix {
 public:
  AttentionMatrix() = default;
  AttentionMatrix(std::size_t rows, std::size_t frames)
      : rows_(rows), frames_(frames), weights_(rows * frames, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t frames() const { return frames_; }

  double& at(std::size_t row, std::size_t frame) { return weights_[row * frames_ + frame]; }
  double at(std::size_t row, std::size_t frame) const {
    return weights_[row * frames_ + frame];
  }
  std::span<const double> row(std::size_t r) const {
    return {weights_.data() + r * frames_, frames_};
  }

  // First frame holding the row maximum.
  std::size_t ArgmaxFrame(std::size_t row) const;

  // Throws Error(kProtocol) unless every row is non-negative and sums to 1.
  void Validate(double tolerance = 1e-6) const;

 private:
  std::size_t rows_ = 0;
  std::size_t frames_ = 0;
  std::vector<double> weights_;
};

struct GeneratorRequest {
  std::span<const float> audio;
  // Position of audio[0] on the processor's own timeline.
  double window_start_s = 0.0;
  std::string source_lang;
  std::string target_lang;
  std::vector<std::string> forced_prefix;
};

/// Tokens produced after the forced prefix. When present, `attention` has one
/// row per token and one column per frame of the submitted window.
struct GeneratorOutput {
  std::vector<std::string> tokens;
  std::optional<AttentionMatrix> attention;
  double frame_duration_s = 0.0;
};

// The model behind a processor: a pure function of the window it is given.
class Generator {
 public:
  virtual ~Generator() = default;
  virtual GeneratorOutput Generate(const GeneratorRequest& request) = 0;
  virtual bool ProvidesAttention() const = 0;
};

}  // namespace simulstream::processors
