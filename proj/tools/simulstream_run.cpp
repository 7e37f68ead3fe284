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
  CLI::App app{"Run a speech processor over a list of WAV files and write a metric log"};
  std::string list, processor_config, log, source_lang, target_lang;
  app.add_option("--list", list, "File with one WAV path per line")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--processor-config", processor_config, "Speech processor YAML")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--log", log, "Metric log (JSONL, appended)")->required();
  app.add_option("--source-lang", source_lang, "Source language code")->required();
  app.add_option("--target-lang", target_lang, "Target language code")->required();
  CLI11_PARSE(app, argc, argv);

  std::size_t failed = 0;
  char* summary = nullptr;
  const ss_status status =
      ss_run_direct(list.c_str(), processor_config.c_str(), log.c_str(), source_lang.c_str(),
                    target_lang.c_str(), &failed, &summary);
  if (status != SS_OK) {
    std::fprintf(stderr, "simulstream_run: %s: %s\n", ss_status_name(status), ss_last_error());
    return 1;
  }
  const auto doc = nlohmann::json::parse(summary);
  ss_free_string(summary);
  for (const auto& failure : doc["failures"]) {
    std::fprintf(stderr, "%s: failed: %s\n", failure["path"].get<std::string>().c_str(),
                 failure["error"].get<std::string>().c_str());
  }
  std::printf("%zu file(s) processed, %zu failed\n", doc["processed"].get<std::size_t>(), failed);
  return failed == 0 ? 0 : 1;
}
