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

#include "clients/direct_runner.hpp"

#include "clients/wav.hpp"
#include "clients/wav_client.hpp"
#include "common/error.hpp"
#include "processors/factory.hpp"
#include "server/session_driver.hpp"

namespace simulstream::clients {

RunSummary RunDirect(const std::filesystem::path& list_path,
                     const std::filesystem::path& processor_yaml,
                     const std::filesystem::path& log_path, const RunOptions& options) {
  const auto paths = ReadWavList(list_path);
  const processors::ProcessorFactory factory(processor_yaml);
  const auto processor = factory.Create();
  protocol::MetricLogWriter log(log_path);

  RunSummary summary;
  for (const auto& path : paths) {
    try {
      const WavStream wav = LoadWav(path);
      processor->SetLanguages(options.source_lang, options.target_lang);
      processor->ClearState();
      server::SessionDriver driver(*processor, path.stem().string(), &log, nullptr);
      driver.Feed(WireSamples(wav));
      driver.Finish();
      ++summary.processed;
    } catch (const Error& e) {
      summary.failures.push_back({path, e.what()});
    }
    try {
      processor->ClearState();
    } catch (const Error&) {
      // The next file clears state again before use.
    }
  }
  return summary;
}

}  // namespace simulstream::clients
