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
#include <string>
#include <vector>

namespace simulstream::evaluation {

struct MwerAlignment {
  // N-1 cut positions into the hypothesis; segment k spans
  // [boundaries[k-1], boundaries[k]) with implicit 0 and m at the ends.
  std::vector<std::size_t> boundaries;
  std::size_t cost = 0;  // summed word-level Levenshtein distance
};

// Splits `hyp` into refs.size() contiguous, possibly empty spans minimizing
// the summed edit distance to the corresponding reference. Words are compared
// case-insensitively (ASCII); punctuation is part of the word. Ties prefer
// match/substitution, then skipping a reference word, then skipping a
// hypothesis word, and the earliest cut among equal-cost ones on that path.
// Throws Error(kInvalidArgument) when `refs` is empty.
MwerAlignment MwerAlign(const std::vector<std::string>& hyp,
                        const std::vector<std::vector<std::string>>& refs);

// Word-level Levenshtein distance under the same normalization.
std::size_t WordEditDistance(const std::vector<std::string>& a, const std::vector<std::string>& b);

template <typename T>
std::vector<std::vector<T>> SplitAt(const std::vector<T>& items,
                                    const std::vector<std::size_t>& boundaries) {
  std::vector<std::vector<T>> spans;
  std::size_t begin = 0;
  for (std::size_t cut : boundaries) {
    spans.emplace_back(items.begin() + static_cast<std::ptrdiff_t>(begin),
                       items.begin() + static_cast<std::ptrdiff_t>(cut));
    begin = cut;
  }
  spans.emplace_back(items.begin() + static_cast<std::ptrdiff_t>(begin), items.end());
  return spans;
}

}  // namespace simulstream::evaluation
