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
#include <string>
#include <vector>

#include "protocol/metric_log.hpp"

namespace simulstream::evaluation {

enum class LatencyMode { kIdeal, kComputationAware };

/// A final output word with the time of its last modification.
struct TimedWord {
  std::string word;
  double ideal_time_s = 0.0;  // audio consumed at the step that last touched it
  double ca_time_s = 0.0;     // the same plus cumulative computation up to that step

  double time(LatencyMode mode) const {
    return mode == LatencyMode::kIdeal ? ideal_time_s : ca_time_s;
  }
};

struct SessionTotals {
  std::size_t deleted_tokens = 0;
  std::size_t final_tokens = 0;
  double total_computation_s = 0.0;
  double total_audio_s = 0.0;
};

struct TimedText {
  std::vector<TimedWord> words;
  SessionTotals totals;

  std::vector<std::string> strings() const;
};

// Replays the records of one stream (in step order). A word takes the latest
// times of the tokens that contribute characters to it. Throws
// Error(kStructure) on a delete that exceeds the display.
TimedText ReconstructTimedText(const std::vector<protocol::MetricLogRecord>& records);

}  // namespace simulstream::evaluation
