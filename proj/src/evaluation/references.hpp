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
#include <map>
#include <string>
#include <vector>

namespace simulstream::evaluation {

/// One sentence-level reference with its position in the source audio.
struct ReferenceSegment {
  std::string text;
  double start_s = 0.0;
  double duration_s = 0.0;

  std::vector<std::string> words() const;
  std::size_t word_count() const { return words().size(); }
};

using ReferenceSet = std::map<std::string, std::vector<ReferenceSegment>>;

// Accepts either JSON
//   {"<audio_id>": [{"text": "...", "start": 0.0, "duration": 2.5}, ...]}
// or TSV lines `audio_id<TAB>start<TAB>duration<TAB>text` (blank lines and
// lines starting with '#' are ignored). Segments are sorted by start; a
// non-positive duration or an overlap raises Error(kInvalidArgument).
ReferenceSet LoadReferences(const std::filesystem::path& path);
ReferenceSet ParseReferences(const std::string& content);

}  // namespace simulstream::evaluation
