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
#include <fstream>
#include <string>

#include "CLI11.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Score a metric log: BLEU, StreamLAAL, normalized erasure, RTF"};
  std::string log, refs, mode, export_dir, report_path;
  app.add_option("--log", log, "Metric log (JSONL)")->required()->check(CLI::ExistingFile);
  app.add_option("--refs", refs, "References (JSON or TSV)")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--mode", mode, "Report only ideal or computation-aware latency")
      ->check(CLI::IsMember({"ideal", "ca"}));
  app.add_option("--export-dir", export_dir, "Write aligned hyp/ref files for external scorers");
  app.add_option("--report", report_path, "Write the JSON report here");
  CLI11_PARSE(app, argc, argv);

  const int modes = mode == "ideal" ? SS_LATENCY_IDEAL : mode == "ca" ? SS_LATENCY_CA
                                                                       : SS_LATENCY_BOTH;
  char* json = nullptr;
  char* table = nullptr;
  const ss_status status =
      ss_evaluate(log.c_str(), refs.c_str(), modes,
                  export_dir.empty() ? nullptr : export_dir.c_str(), &json, &table);
  if (status != SS_OK) {
    std::fprintf(stderr, "simulstream_eval: %s: %s\n", ss_status_name(status), ss_last_error());
    return 1;
  }
  std::fputs(table, stdout);
  int exit_code = 0;
  if (!report_path.empty()) {
    std::ofstream out(report_path, std::ios::trunc);
    out << json << '\n';
    if (!out) {
      std::fprintf(stderr, "simulstream_eval: cannot write %s\n", report_path.c_str());
      exit_code = 1;
    }
  }
  ss_free_string(json);
  ss_free_string(table);
  return exit_code;
}
