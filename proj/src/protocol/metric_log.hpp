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
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <vector>

#include "protocol/messages.hpp"

namespace simulstream::protocol {

/// One processing step of one audio stream, as written to the JSONL log.
struct MetricLogRecord {
  std::string audio_id;
  int step = 1;
  double audio_processed_s = 0.0;  // original-stream seconds consumed
  double computation_s = 0.0;      // wall clock inside the processor
  std::size_t delete_count = 0;
  std::vector<std::string> append_tokens;

  IncrementalOutput output() const { return {delete_count, append_tokens}; }
  bool operator==(const MetricLogRecord&) const = default;
};

std::string SerializeRecord(const MetricLogRecord& record);
MetricLogRecord ParseRecord(const std::string& line);

// Writes the record as one line. The line is fully formatted before anything
// reaches `sink`, and the sink is flushed; a failed stream raises Error(kIo).
void WriteLogRecord(const MetricLogRecord& record, std::ostream& sink);

/// Append-only JSONL file shared by concurrent sessions.
class MetricLogWriter {
 public:
  explicit MetricLogWriter(const std::filesystem::path& path);

  void Write(const MetricLogRecord& record);

 private:
  std::mutex mutex_;
  std::ofstream file_;
};

using ParsedLog = std::map<std::string, std::vector<MetricLogRecord>>;

// Groups records by audio_id (each group in step order). Errors name the
// 1-based line number: malformed JSON or fields raise kProtocol; a step gap,
// regression, decreasing audio time, or a replay underflow raise kStructure.
ParsedLog ParseLog(std::istream& source);
ParsedLog ParseLogFile(const std::filesystem::path& path);

}  // namespace simulstream::protocol
