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

#include <filesystem>
#include <memory>
#include <string>

#include "processors/generator.hpp"
#include "processors/processor.hpp"

namespace YAML {
class Node;
}

namespace simulstream::processors {

/// Builds processors from a processor YAML file:
///
///   type: sliding_window | streamatt | vad | scripted | bridge
///   # sliding_window: window_s, stride_s
///   # streamatt:      cutoff_frames, chunk_s, max_history_words, flush_on_finalize
///   # vad:            threshold, frame_ms, hangover_frames, chunk_s, inner: {...}
///   # scripted:       script_path, chunk_s, languages, fail_on_chunk
///   # bridge:         command, timeout_s, chunk_s, max_window_s
///
/// sliding_window and streamatt take their model from `generator:` (a map with
/// `type: scripted | bridge`) or from an inline `script_path` / `command`.
/// Relative paths resolve against the YAML file's directory.
class ProcessorFactory {
 public:
  // Throws Error(kConfig) if the file is unreadable or invalid. One instance
  // is built eagerly to surface configuration errors at startup.
  explicit ProcessorFactory(const std::filesystem::path& yaml_path);
  static ProcessorFactory FromString(const std::string& yaml,
                                     const std::filesystem::path& base_dir);

  // A new, loaded processor.
  std::unique_ptr<SpeechProcessor> Create() const;

 private:
  ProcessorFactory(std::string yaml, std::filesystem::path base_dir);

  std::string yaml_;
  std::filesystem::path base_dir_;
};

std::unique_ptr<SpeechProcessor> BuildProcessor(const YAML::Node& node,
                                                const std::filesystem::path& base_dir);
std::shared_ptr<Generator> BuildGenerator(const YAML::Node& node,
                                          const std::filesystem::path& base_dir);

}  // namespace simulstream::processors
