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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace simulstream::clients {

/// A mono 16 kHz 16-bit PCM file decoded to [-1, 1).
struct WavStream {
  std::filesystem::path path;
  std::vector<std::int16_t> pcm;
  std::vector<float> samples;
  double duration_s = 0.0;
};

// Decodes s / 32768. Anything other than PCM (format 1), one channel, 16 kHz
// and 16 bits is rejected with Error(kInvalidArgument) naming the offending
// property; there is no resampling.
WavStream LoadWav(const std::filesystem::path& path);

// The samples as the server sees them after the wire codec (pcm / 32767).
// Streaming these reproduces the file's PCM bits exactly.
std::vector<float> WireSamples(const WavStream& wav);

void WriteWav(const std::filesystem::path& path, std::span<const std::int16_t> samples,
              int sample_rate_hz = 16000, int channels = 1);

}  // namespace simulstream::clients
