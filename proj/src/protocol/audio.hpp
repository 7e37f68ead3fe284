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
#include <cstdint>
#include <span>
#include <vector>

namespace simulstream::protocol {

inline constexpr int kSampleRateHz = 16000;

inline constexpr double SamplesToSeconds(std::size_t samples) {
  return static_cast<double>(samples) / kSampleRateHz;
}

// Nearest whole sample count for a duration in seconds.
std::size_t SecondsToSamples(double seconds);

/// A slice of mono 16 kHz audio, normalized to [-1, 1], positioned within
/// its stream by the number of seconds that preceded it.
struct AudioChunk {
  std::vector<float> samples;
  double stream_offset_s = 0.0;

  double duration_s() const { return SamplesToSeconds(samples.size()); }
  double end_s() const { return stream_offset_s + duration_s(); }
};

// Throws Error(kInvalidArgument) if a sample is outside [-1, 1] or not finite,
// or if the offset is negative.
void ValidateChunk(const AudioChunk& chunk);

// float -> PCM16 via round(f * 32767), clamped to the int16 range.
std::int16_t EncodeSample(float value);
float DecodeSample(std::int16_t value);

/// Little-endian signed 16-bit mono PCM.
std::vector<std::uint8_t> EncodeAudioFrame(std::span<const float> samples);

/// Inverse of EncodeAudioFrame up to quantization. A trailing odd byte is a
/// protocol error.
std::vector<float> DecodeAudioFrame(std::span<const std::uint8_t> bytes);

}  // namespace simulstream::protocol
