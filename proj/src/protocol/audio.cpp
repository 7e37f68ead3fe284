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

#include "protocol/audio.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "common/error.hpp"

namespace simulstream::protocol {

std::size_t SecondsToSamples(double seconds) {
  if (seconds <= 0.0) return 0;
  return static_cast<std::size_t>(std::llround(seconds * kSampleRateHz));
}

void ValidateChunk(const AudioChunk& chunk) {
  if (!(chunk.stream_offset_s >= 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "audio chunk has a negative stream offset");
  }
  for (std::size_t i = 0; i < chunk.samples.size(); ++i) {
    const float s = chunk.samples[i];
    if (!(s >= -1.0f && s <= 1.0f)) {
      Fail(ErrorCode::kInvalidArgument,
           "audio sample " + std::to_string(i) + " is outside [-1, 1]");
    }
  }
}

std::int16_t EncodeSample(float value) {
  if (std::isnan(value)) return 0;
  const double scaled = std::round(static_cast<double>(value) * 32767.0);
  return static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
}

float DecodeSample(std::int16_t value) {
  return static_cast<float>(value / 32767.0);
}

std::vector<std::uint8_t> EncodeAudioFrame(std::span<const float> samples) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(samples.size() * 2);
  for (float f : samples) {
    const auto u = static_cast<std::uint16_t>(EncodeSample(f));
    bytes.push_back(static_cast<std::uint8_t>(u & 0xFFu));
    bytes.push_back(static_cast<std::uint8_t>(u >> 8));
  }
  return bytes;
}

std::vector<float> DecodeAudioFrame(std::span<const std::uint8_t> bytes) {
  if (bytes.size() % 2 != 0) {
    Fail(ErrorCode::kProtocol, "audio frame has an odd number of bytes (" +
                                   std::to_string(bytes.size()) + ")");
  }
  std::vector<float> samples;
  samples.reserve(bytes.size() / 2);
  for (std::size_t i = 0; i < bytes.size(); i += 2) {
    const auto u = static_cast<std::uint16_t>(bytes[i] | (bytes[i + 1] << 8));
    samples.push_back(DecodeSample(static_cast<std::int16_t>(u)));
  }
  return samples;
}

}  // namespace simulstream::protocol
