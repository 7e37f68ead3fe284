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

#include <simulstream/simulstream.h>

#include <cstdio>
#include <nlohmann/json.hpp>
#include <string>

#include "CLI11.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Stream a list of WAV files to a simulstream server"};
  std::string list, url, source_lang, target_lang, pace = "realtime", out_dir;
  std::size_t concurrency = 1;
  std::size_t max_retries = 60;
  app.add_option("--list", list, "File with one WAV path per line")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--url", url, "Server URL, e.g. ws://127.0.0.1:8080")->required();
  app.add_option("--source-lang", source_lang, "Source language code")->required();
  app.add_option("--target-lang", target_lang, "Target language code")->required();
  app.add_option("--pace", pace, "realtime or max")
      ->check(CLI::IsMember({"realtime", "max"}))
      ->capture_default_str();
  app.add_option("--out-dir", out_dir, "Write <audio_id>.txt transcripts here");
  app.add_option("--concurrency", concurrency, "Parallel sessions")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--max-retries", max_retries, "Retries when the server is busy")
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  ss_stream_options options;
  ss_stream_options_init(&options);
  options.source_lang = source_lang.c_str();
  options.target_lang = target_lang.c_str();
  options.pace = pace == "max" ? SS_PACE_MAX : SS_PACE_REALTIME;
  options.out_dir = out_dir.empty() ? nullptr : out_dir.c_str();
  options.concurrency = concurrency;
  options.max_retries = max_retries;

  std::size_t failed = 0;
  char* summary = nullptr;
  const ss_status status =
      ss_stream_wav_files(list.c_str(), url.c_str(), &options, &failed, &summary);
  if (status != SS_OK) {
    std::fprintf(stderr, "simulstream_client: %s: %s\n", ss_status_name(status), ss_last_error());
    return 1;
  }
  const auto doc = nlohmann::json::parse(summary);
  ss_free_string(summary);
  for (const auto& file : doc["files"]) {
    if (file["ok"].get<bool>()) {
      std::printf("%s: ok (%.2f s audio)\n", file["audio_id"].get<std::string>().c_str(),
                  file["audio_s"].get<double>());
    } else {
      std::fprintf(stderr, "%s: failed: %s\n", file["path"].get<std::string>().c_str(),
                   file["error"].get<std::string>().c_str());
    }
  }
  std::printf("%zu session(s) completed, %zu failed\n", doc["completed"].get<std::size_t>(),
              failed);
  return failed == 0 ? 0 : 1;
}
