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

#include "processors/lcs.hpp"

#include <algorithm>

namespace simulstream::processors {

std::vector<std::pair<std::size_t, std::size_t>> LongestCommonSubsequence(
    const std::vector<std::string>& previous, const std::vector<std::string>& current) {
  const std::size_t m = previous.size();
  const std::size_t n = current.size();
  std::vector<std::size_t> table((m + 1) * (n + 1), 0);
  auto cell = [&](std::size_t i, std::size_t j) -> std::size_t& { return table[i * (n + 1) + j]; };
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      cell(i, j) = previous[i - 1] == current[j - 1]
                       ? cell(i - 1, j - 1) + 1
                       : std::max(cell(i - 1, j), cell(i, j - 1));
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t i = m;
  std::size_t j = n;
  while (i > 0 && j > 0) {
    if (previous[i - 1] == current[j - 1]) {
      pairs.emplace_back(i - 1, j - 1);
      --i;
      --j;
    } else if (cell(i, j - 1) >= cell(i - 1, j)) {
      --j;
    } else {
      --i;
    }
  }
  std::reverse(pairs.begin(), pairs.end());
  return pairs;
}

}  // namespace simulstream::processors
