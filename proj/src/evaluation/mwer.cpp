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

#include "evaluation/mwer.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>

#include "common/error.hpp"

namespace simulstream::evaluation {

namespace {

std::string Normalize(const std::string& word) {
  std::string out = word;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> NormalizeAll(const std::vector<std::string>& words) {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(Normalize(w));
  return out;
}

enum Move : std::uint8_t { kDiagonal, kSkipRef, kSkipHyp };

}  // namespace

std::size_t WordEditDistance(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const auto x = NormalizeAll(a);
  const auto y = NormalizeAll(b);
  std::vector<std::size_t> row(y.size() + 1);
  for (std::size_t j = 0; j <= y.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= y.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({diagonal + (x[i - 1] == y[j - 1] ? 0 : 1), row[j - 1] + 1, up + 1});
      diagonal = up;
    }
  }
  return row[y.size()];
}

MwerAlignment MwerAlign(const std::vector<std::string>& hyp,
                        const std::vector<std::vector<std::string>>& refs) {
  if (refs.empty()) Fail(ErrorCode::kInvalidArgument, "mwer alignment needs at least one reference");

  const auto h = NormalizeAll(hyp);
  std::vector<std::string> r;
  std::vector<std::size_t> ref_ends;  // column index where each reference ends
  for (const auto& segment : refs) {
    for (const auto& w : segment) r.push_back(Normalize(w));
    ref_ends.push_back(r.size());
  }
  const std::size_t m = h.size();
  const std::size_t n = r.size();
  const std::size_t width = n + 1;

  // Rolling cost rows plus a full matrix of backpointers.
  std::vector<Move> moves((m + 1) * width, kDiagonal);
  std::vector<std::size_t> previous(width), current(width);
  for (std::size_t j = 0; j <= n; ++j) {
    previous[j] = j;
    if (j > 0) moves[j] = kSkipRef;
  }
  for (std::size_t i = 1; i <= m; ++i) {
    current[0] = i;
    moves[i * width] = kSkipHyp;
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t diagonal = previous[j - 1] + (h[i - 1] == r[j - 1] ? 0 : 1);
      const std::size_t skip_ref = current[j - 1] + 1;
      const std::size_t skip_hyp = previous[j] + 1;
      if (diagonal <= skip_ref && diagonal <= skip_hyp) {
        current[j] = diagonal;
        moves[i * width + j] = kDiagonal;
      } else if (skip_ref <= skip_hyp) {
        current[j] = skip_ref;
        moves[i * width + j] = kSkipRef;
      } else {
        current[j] = skip_hyp;
        moves[i * width + j] = kSkipHyp;
      }
    }
    std::swap(previous, current);
  }

  MwerAlignment result;
  result.cost = previous[n];

  // Walking back, rows only decrease, so the last row seen in a column is the
  // smallest hypothesis position on the path at that reference boundary.
  std::vector<std::size_t> min_row(width, m);
  std::size_t i = m;
  std::size_t j = n;
  min_row[j] = i;
  while (i > 0 || j > 0) {
    switch (moves[i * width + j]) {
      case kDiagonal:
        --i;
        --j;
        break;
      case kSkipRef:
        --j;
        break;
      case kSkipHyp:
        --i;
        break;
    }
    min_row[j] = i;
  }
  for (std::size_t k = 0; k + 1 < ref_ends.size(); ++k) {
    result.boundaries.push_back(min_row[ref_ends[k]]);
  }
  return result;
}

}  // namespace simulstream::evaluation
