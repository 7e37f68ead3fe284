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

#include <string>
#include <string_view>
#include <vector>

namespace simulstream::evaluation {

// mteval-v13a tokenization as used for BLEU: punctuation and symbols are split
// off, periods and commas only when not between digits. Operates on bytes, so
// non-ASCII characters pass through untouched. Returns space-joined tokens.
std::string Tokenize13a(std::string_view line);

std::vector<std::string> Tokens13a(std::string_view line);

}  // namespace simulstream::evaluation
