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

#include "clients/wav_client.hpp"

#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>

#include "clients/wav.hpp"
#include "common/error.hpp"

namespace simulstream::clients {

std::vector<std::filesystem::path> ReadWavList(const std::filesystem::path& list_path) {
  std::ifstream in(list_path);
  if (!in) Fail(ErrorCode::kIo, "cannot open list " + list_path.string());
  const auto base = list_path.parent_path();
  std::vector<std::filesystem::path> paths;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    std::filesystem::path path = line.substr(first, last - first + 1);
    if (path.is_relative()) path = base / path;
    paths.push_back(path);
  }
  return paths;
}

namespace {

std::string Trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

void StreamOne(FileOutcome& outcome, const std::string& url, const StreamOptions& options) {
  WavStream wav;
  try {
    wav = LoadWav(outcome.path);
  } catch (const Error& e) {
    outcome.error = e.what();
    std::cerr << "warning: skipping " << outcome.path.string() << ": " << e.what() << '\n';
    return;
  }
  outcome.audio_s = wav.duration_s;
  const protocol::SessionConfig config{options.source_lang, options.target_lang,
                                       outcome.audio_id};
  try {
    for (;;) {
      StreamingResult result = RunStreamingSession(url, config, WireSamples(wav), options.pace);
      if (result.refused) {
        if (outcome.retries >= options.max_retries) {
          outcome.error = result.error.value_or("connection refused");
          return;
        }
        ++outcome.retries;
        std::this_thread::sleep_for(std::chrono::duration<double>(options.retry_delay_s));
        continue;
      }
      outcome.send_duration_s = result.send_duration_s;
      outcome.text = Trim(protocol::JoinTokens(result.display));
      if (result.error) {
        outcome.error = *result.error;
        return;
      }
      break;
    }
    if (options.out_dir) {
      const auto path = *options.out_dir / (outcome.audio_id + ".txt");
      std::ofstream out(path, std::ios::trunc);
      out << outcome.text << '\n';
      if (!out) Fail(ErrorCode::kIo, "cannot write " + path.string());
    }
    outcome.ok = true;
  } catch (const Error& e) {
    outcome.error = e.what();
  }
}

}  // namespace

StreamSummary StreamWavFiles(const std::filesystem::path& list_path, const std::string& url,
                             const StreamOptions& options) {
  ParseWebSocketUrl(url);
  const auto paths = ReadWavList(list_path);
  if (options.out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*options.out_dir, ec);
    if (ec) Fail(ErrorCode::kIo, "cannot create " + options.out_dir->string());
  }

  StreamSummary summary;
  for (const auto& path : paths) {
    FileOutcome outcome;
    outcome.path = path;
    outcome.audio_id = path.stem().string();
    summary.files.push_back(std::move(outcome));
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < summary.files.size(); i = next++) {
      StreamOne(summary.files[i], url, options);
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(options.concurrency,
                                                                 summary.files.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& thread : pool) thread.join();

  for (const auto& outcome : summary.files) {
    if (outcome.ok) {
      ++summary.completed;
    } else {
      ++summary.failed;
    }
  }
  return summary;
}

}  // namespace simulstream::clients
