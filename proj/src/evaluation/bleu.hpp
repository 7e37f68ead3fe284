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

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace simulstream::evaluation {

struct BleuScore {
  double score = 0.0;                  // [0, 100]
  std::array<double, 4> precisions{};  // percent, after smoothing
  std::array<std::size_t, 4> correct{};
  std::array<std::size_t, 4> total{};
  double brevity_penalty = 0.0;
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;
};

// Corpus BLEU with one reference per segment, 13a tokenization, 4-gram
// precisions pooled over segments and exponential smoothing of zero
// precisions. Scores 0 when no n-gram matches at all. Throws
// Error(kInvalidArgument) if the segment counts differ.
BleuScore CorpusBleu(const std::vector<std::string>& hyps, const std::vector<std::string>& refs);

}  // namespace simulstream::evaluation
