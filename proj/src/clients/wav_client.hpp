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
#include <optional>
#include <string>
#include <vector>

#include "clients/websocket_client.hpp"

namespace simulstream::clients {

// One path per line; blank lines and '#' comments are skipped. Relative paths
// resolve against the list file's directory.
std::vector<std::filesystem::path> ReadWavList(const std::filesystem::path& list_path);

struct StreamOptions {
  std::string source_lang;
  std::string target_lang;
  Pace pace = Pace::kRealtime;
  std::optional<std::filesystem::path> out_dir;  // <stem>.txt per file
  std::size_t concurrency = 1;
  // A refused session is retried after `retry_delay_s` up to `max_retries`
  // times, then reported as failed.
  std::size_t max_retries = 60;
  double retry_delay_s = 0.5;
};

struct FileOutcome {
  std::filesystem::path path;
  std::string audio_id;
  bool ok = false;
  std::string text;
  std::string error;
  std::size_t retries = 0;
  double audio_s = 0.0;
  double send_duration_s = 0.0;
};

struct StreamSummary {
  std::vector<FileOutcome> files;  // list order
  std::size_t completed = 0;
  std::size_t failed = 0;  // includes invalid WAVs

  bool ok() const { return failed == 0; }
};

// Streams every listed WAV to the server, one session per file with
// audio_id = file stem. Invalid WAVs are skipped with a warning on stderr and
// counted as failures; the rest still run.
StreamSummary StreamWavFiles(const std::filesystem::path& list_path, const std::string& url,
                             const StreamOptions& options);

}  // namespace simulstream::clients
