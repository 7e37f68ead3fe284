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

namespace simulstream::evaluation {

/// One aligned hypothesis/reference pair.
struct ScoredSegment {
  std::string audio_id;
  std::size_t index = 0;
  std::string hypothesis;
  std::string reference;

  bool operator==(const ScoredSegment&) const = default;
};

// Writes hyp.txt and ref.txt (line i = segment i, empty hypotheses kept as
// empty lines) and manifest.tsv (`line<TAB>audio_id<TAB>segment_index`) into
// `out_dir`, creating it if needed. Embedded newlines become spaces.
void ExportForExternalScorer(const std::vector<ScoredSegment>& segments,
                             const std::filesystem::path& out_dir);

// Reads back an export directory.
std::vector<ScoredSegment> ReadExport(const std::filesystem::path& out_dir);

}  // namespace simulstream::evaluation
