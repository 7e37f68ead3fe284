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

#include "server/session_driver.hpp"

#include <algorithm>
#include <chrono>

#include "common/error.hpp"

namespace simulstream::server {

using protocol::AudioChunk;
using protocol::IncrementalOutput;

SessionDriver::SessionDriver(processors::SpeechProcessor& processor, std::string audio_id,
                             protocol::MetricLogWriter* log, OutputSink on_output)
    : processor_(processor),
      audio_id_(std::move(audio_id)),
      log_(log),
      on_output_(std::move(on_output)),
      chunk_samples_(std::max<std::size_t>(
          1, protocol::SecondsToSamples(processor.PreferredChunkSeconds()))) {}

double SessionDriver::audio_processed_s() const {
  return protocol::SamplesToSeconds(consumed_samples_);
}

template <typename Call>
void SessionDriver::RunStep(Call&& call) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<IncrementalOutput> outputs = call();
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  const IncrementalOutput net = protocol::Compose(outputs);
  if (net.delete_count > display_length_) {
    Fail(ErrorCode::kProcessor, "processor deleted " + std::to_string(net.delete_count) +
                                    " tokens with only " +
                                    std::to_string(display_length_) + " displayed");
  }
  display_length_ = display_length_ - net.delete_count + net.append_tokens.size();

  protocol::MetricLogRecord record;
  record.audio_id = audio_id_;
  record.step = ++step_;
  record.audio_processed_s = audio_processed_s();
  record.computation_s = elapsed.count();
  record.delete_count = net.delete_count;
  record.append_tokens = net.append_tokens;
  if (log_) log_->Write(record);
  records_.push_back(std::move(record));

  if (!net.empty() && on_output_) on_output_(net, audio_processed_s());
}

void SessionDriver::Feed(std::span<const float> samples) {
  if (finished_) Fail(ErrorCode::kProtocol, "audio received after end of stream");
  pending_.insert(pending_.end(), samples.begin(), samples.end());
  std::size_t offset = 0;
  while (pending_.size() - offset >= chunk_samples_) {
    AudioChunk chunk;
    chunk.samples.assign(pending_.begin() + static_cast<std::ptrdiff_t>(offset),
                         pending_.begin() + static_cast<std::ptrdiff_t>(offset + chunk_samples_));
    chunk.stream_offset_s = audio_processed_s();
    consumed_samples_ += chunk.samples.size();
    offset += chunk_samples_;
    RunStep([&] { return processor_.ProcessChunk(chunk); });
  }
  pending_.erase(pending_.begin(), pending_.begin() + static_cast<std::ptrdiff_t>(offset));
}

void SessionDriver::Finish() {
  if (finished_) return;
  finished_ = true;
  if (!pending_.empty()) {
    AudioChunk chunk;
    chunk.samples = std::move(pending_);
    pending_.clear();
    chunk.stream_offset_s = audio_processed_s();
    consumed_samples_ += chunk.samples.size();
    RunStep([&] { return processor_.ProcessChunk(chunk); });
  }
  RunStep([&] { return processor_.Finalize(); });
}

}  // namespace simulstream::server
