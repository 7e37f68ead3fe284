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

#include "protocol/metric_log.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

#include "common/error.hpp"

namespace simulstream::protocol {

using nlohmann::json;

std::string SerializeRecord(const MetricLogRecord& record) {
  const json j = {{"audio_id", record.audio_id},
                  {"step", record.step},
                  {"audio_processed_s", record.audio_processed_s},
                  {"computation_s", record.computation_s},
                  {"delete_count", record.delete_count},
                  {"append_tokens", record.append_tokens}};
  return j.dump();
}

MetricLogRecord ParseRecord(const std::string& line) {
  const json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    Fail(ErrorCode::kProtocol, "not a JSON object");
  }
  if (j.contains("delete_count") && !j["delete_count"].is_number_unsigned()) {
    Fail(ErrorCode::kProtocol, "delete_count must be a non-negative integer");
  }
  MetricLogRecord r;
  try {
    r.audio_id = j.at("audio_id").get<std::string>();
    r.step = j.at("step").get<int>();
    r.audio_processed_s = j.at("audio_processed_s").get<double>();
    r.computation_s = j.at("computation_s").get<double>();
    r.delete_count = j.at("delete_count").get<std::size_t>();
    r.append_tokens = j.at("append_tokens").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    Fail(ErrorCode::kProtocol, std::string("bad record field: ") + e.what());
  }
  if (r.step < 1) Fail(ErrorCode::kProtocol, "step must be >= 1");
  if (r.computation_s < 0.0) Fail(ErrorCode::kProtocol, "computation_s is negative");
  if (r.audio_processed_s < 0.0) {
    Fail(ErrorCode::kProtocol, "audio_processed_s is negative");
  }
  return r;
}

void WriteLogRecord(const MetricLogRecord& record, std::ostream& sink) {
  const std::string line = SerializeRecord(record) + '\n';
  sink.write(line.data(), static_cast<std::streamsize>(line.size()));
  sink.flush();
  if (!sink) Fail(ErrorCode::kIo, "failed to write metric log record");
}

MetricLogWriter::MetricLogWriter(const std::filesystem::path& path)
    : file_(path, std::ios::out | std::ios::app | std::ios::binary) {
  if (!file_) Fail(ErrorCode::kIo, "cannot open metric log " + path.string());
}

void MetricLogWriter::Write(const MetricLogRecord& record) {
  std::lock_guard lock(mutex_);
  WriteLogRecord(record, file_);
}

namespace {

struct NumberedRecord {
  std::size_t line = 0;
  MetricLogRecord record;
};

std::string At(std::size_t line) { return "line " + std::to_string(line) + ": "; }

}  // namespace

ParsedLog ParseLog(std::istream& source) {
  std::map<std::string, std::vector<NumberedRecord>> groups;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      auto record = ParseRecord(line);
      groups[record.audio_id].push_back({line_no, std::move(record)});
    } catch (const Error& e) {
      Fail(e.code(), At(line_no) + e.what());
    }
  }

  ParsedLog log;
  for (auto& [audio_id, entries] : groups) {
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& a, const auto& b) { return a.record.step < b.record.step; });
    std::vector<MetricLogRecord> records;
    std::vector<std::string> display;
    double last_audio = 0.0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& [no, rec] = entries[i];
      if (rec.step != static_cast<int>(i) + 1) {
        Fail(ErrorCode::kStructure,
             At(no) + "audio \"" + audio_id + "\" expected step " +
                 std::to_string(i + 1) + " but found " + std::to_string(rec.step));
      }
      if (rec.audio_processed_s < last_audio) {
        Fail(ErrorCode::kStructure,
             At(no) + "audio_processed_s decreases for \"" + audio_id + "\"");
      }
      last_audio = rec.audio_processed_s;
      try {
        ApplyOutput(display, rec.output());
      } catch (const Error& e) {
        Fail(ErrorCode::kStructure, At(no) + e.what());
      }
      records.push_back(rec);
    }
    log.emplace(audio_id, std::move(records));
  }
  return log;
}

ParsedLog ParseLogFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open metric log " + path.string());
  return ParseLog(in);
}

}  // namespace simulstream::protocol
