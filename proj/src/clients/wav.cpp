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

#include "clients/wav.hpp"

#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "common/error.hpp"
#include "protocol/audio.hpp"

namespace simulstream::clients {

namespace {

std::uint32_t ReadU32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t ReadU16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void PutU16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void PutTag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

WavStream LoadWav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  const std::string name = path.string();
  auto reject = [&](const std::string& why) {
    Fail(ErrorCode::kInvalidArgument, name + ": " + why);
  };

  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    reject("not a RIFF/WAVE file");
  }

  bool have_format = false;
  const std::uint8_t* data = nullptr;
  std::size_t data_size = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::size_t size = ReadU32(chunk + 4);
    const std::size_t body = pos + 8;
    const std::size_t available = std::min(size, bytes.size() - body);
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (available < 16) reject("truncated fmt chunk");
      const std::uint8_t* fmt = bytes.data() + body;
      const auto format = ReadU16(fmt);
      const auto channels = ReadU16(fmt + 2);
      const auto rate = ReadU32(fmt + 4);
      const auto bits = ReadU16(fmt + 14);
      if (format != 1) reject("unsupported audio format " + std::to_string(format) + " (need PCM)");
      if (channels != 1) reject(std::to_string(channels) + " channels (need mono)");
      if (rate != static_cast<std::uint32_t>(protocol::kSampleRateHz)) {
        reject("sample rate " + std::to_string(rate) + " Hz (need 16000 Hz)");
      }
      if (bits != 16) reject(std::to_string(bits) + "-bit samples (need 16-bit)");
      have_format = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = available;
    }
    pos = body + size + (size & 1);
  }
  if (!have_format) reject("missing fmt chunk");
  if (!data) reject("missing data chunk");

  WavStream wav;
  wav.path = path;
  wav.pcm.reserve(data_size / 2);
  wav.samples.reserve(data_size / 2);
  for (std::size_t i = 0; i + 1 < data_size; i += 2) {
    const auto s = static_cast<std::int16_t>(ReadU16(data + i));
    wav.pcm.push_back(s);
    wav.samples.push_back(static_cast<float>(s) / 32768.0f);
  }
  wav.duration_s = protocol::SamplesToSeconds(wav.samples.size());
  return wav;
}

std::vector<float> WireSamples(const WavStream& wav) {
  std::vector<float> out;
  out.reserve(wav.pcm.size());
  for (std::int16_t s : wav.pcm) out.push_back(protocol::DecodeSample(s));
  return out;
}

void WriteWav(const std::filesystem::path& path, std::span<const std::int16_t> samples,
              int sample_rate_hz, int channels) {
  const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  PutTag(out, "RIFF");
  PutU32(out, 36 + data_bytes);
  PutTag(out, "WAVE");
  PutTag(out, "fmt ");
  PutU32(out, 16);
  PutU16(out, 1);
  PutU16(out, static_cast<std::uint16_t>(channels));
  PutU32(out, static_cast<std::uint32_t>(sample_rate_hz));
  PutU32(out, static_cast<std::uint32_t>(sample_rate_hz * channels * 2));
  PutU16(out, static_cast<std::uint16_t>(channels * 2));
  PutU16(out, 16);
  PutTag(out, "data");
  PutU32(out, data_bytes);
  for (std::int16_t s : samples) PutU16(out, static_cast<std::uint16_t>(s));

  std::ofstream file(path, std::ios::binary);
  file.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!file) Fail(ErrorCode::kIo, "cannot write " + path.string());
}

}  // namespace simulstream::clients
