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
#include <utility>
#include <vector>

namespace simulstream::processors {

/// Matched (previous index, current index) pairs of a longest common
/// subsequence, in increasing order. Computed with the O(|a|*|b|) table; the
/// backtrace takes a match whenever the tokens are equal and otherwise steps
/// back in `current` before `previous`, so the last pair sits as far right in
/// `previous` as any LCS allows.
std::vector<std::pair<std::size_t, std::size_t>> LongestCommonSubsequence(
    const std::vector<std::string>& previous, const std::vector<std::string>& current);

}  // namespace simulstream::processors
