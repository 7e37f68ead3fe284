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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "processors/processor.hpp"
#include "protocol/metric_log.hpp"

namespace simulstream::server {

/// Drives one stream through a processor: re-buffers incoming audio into the
/// processor's preferred chunk size, times each call, and reports one step per
/// call. The server and the direct runner both go through this class, which
/// keeps their metric logs identical for deterministic processors.
class SessionDriver {
 public:
  // Receives each non-empty step output with the original-stream seconds
  // consumed so far.
  using OutputSink =
      std::function<void(const protocol::IncrementalOutput&, double audio_processed_s)>;

  SessionDriver(processors::SpeechProcessor& processor, std::string audio_id,
                protocol::MetricLogWriter* log, OutputSink on_output);

  // Runs as many full-chunk steps as the pending audio allows.
  void Feed(std::span<const float> samples);

  // Processes the remaining audio as a short final chunk, then finalizes.
  void Finish();

  int steps() const { return step_; }
  double audio_processed_s() const;
  std::size_t display_length() const { return display_length_; }
  const std::vector<protocol::MetricLogRecord>& records() const { return records_; }

 private:
  template <typename Call>
  void RunStep(Call&& call);

  processors::SpeechProcessor& processor_;
  std::string audio_id_;
  protocol::MetricLogWriter* log_;
  OutputSink on_output_;
  std::size_t chunk_samples_;

  std::vector<float> pending_;
  std::size_t consumed_samples_ = 0;
  std::size_t display_length_ = 0;
  int step_ = 0;
  bool finished_ = false;
  std::vector<protocol::MetricLogRecord> records_;
};

}  // namespace simulstream::server
