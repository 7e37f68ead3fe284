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
#include <string>
#include <vector>

namespace simulstream::clients {

struct RunOptions {
  std::string source_lang;
  std::string target_lang;
};

struct RunFailure {
  std::filesystem::path path;
  std::string error;
};

struct RunSummary {
  std::size_t processed = 0;
  std::vector<RunFailure> failures;

  bool ok() const { return failures.empty(); }
};

// Feeds each listed WAV straight into a processor built from
// `processor_yaml` and appends its steps to the JSONL log at `log_path`.
// A processor that cannot be built is fatal (Error(kConfig)); a failing file
// is recorded and the run moves on.
RunSummary RunDirect(const std::filesystem::path& list_path,
                     const std::filesystem::path& processor_yaml,
                     const std::filesystem::path& log_path, const RunOptions& options);

}  // namespace simulstream::clients
