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

#include "evaluation/bleu.hpp"

#include <cmath>
#include <string_view>
#include <unordered_map>

#include "common/error.hpp"
#include "evaluation/tokenizer.hpp"

namespace simulstream::evaluation {

namespace {

constexpr std::size_t kMaxOrder = 4;

using NgramCounts = std::unordered_map<std::string, std::size_t>;

std::array<NgramCounts, kMaxOrder> CountNgrams(const std::vector<std::string>& tokens) {
  std::array<NgramCounts, kMaxOrder> counts;
  for (std::size_t n = 1; n <= kMaxOrder; ++n) {
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      std::string key = tokens[i];
      for (std::size_t k = 1; k < n; ++k) {
        key += '\x1f';
        key += tokens[i + k];
      }
      ++counts[n - 1][key];
    }
  }
  return counts;
}

// Log used for the geometric mean; a zero precision contributes a huge
// negative term instead of -inf.
double SafeLog(double value) { return value == 0.0 ? -9999999999.0 : std::log(value); }

}  // namespace

BleuScore CorpusBleu(const std::vector<std::string>& hyps, const std::vector<std::string>& refs) {
  if (hyps.size() != refs.size()) {
    Fail(ErrorCode::kInvalidArgument, "BLEU needs one reference per hypothesis segment (" +
                                          std::to_string(hyps.size()) + " vs " +
                                          std::to_string(refs.size()) + ")");
  }
  BleuScore result;
  for (std::size_t s = 0; s < hyps.size(); ++s) {
    const auto hyp = Tokens13a(hyps[s]);
    const auto ref = Tokens13a(refs[s]);
    result.hyp_length += hyp.size();
    result.ref_length += ref.size();
    const auto hyp_counts = CountNgrams(hyp);
    const auto ref_counts = CountNgrams(ref);
    for (std::size_t n = 0; n < kMaxOrder; ++n) {
      for (const auto& [ngram, count] : hyp_counts[n]) {
        result.total[n] += count;
        const auto it = ref_counts[n].find(ngram);
        if (it != ref_counts[n].end()) result.correct[n] += std::min(count, it->second);
      }
    }
  }

  const double sys_len = static_cast<double>(result.hyp_length);
  const double ref_len = static_cast<double>(result.ref_length);
  if (result.hyp_length < result.ref_length) {
    result.brevity_penalty = result.hyp_length > 0 ? std::exp(1.0 - ref_len / sys_len) : 0.0;
  } else {
    result.brevity_penalty = 1.0;
  }

  bool any_correct = false;
  for (std::size_t c : result.correct) any_correct = any_correct || c > 0;
  if (!any_correct) return result;

  double smooth = 1.0;
  for (std::size_t n = 0; n < kMaxOrder; ++n) {
    if (result.total[n] == 0) break;
    const double total = static_cast<double>(result.total[n]);
    if (result.correct[n] == 0) {
      smooth *= 2.0;
      result.precisions[n] = 100.0 / (smooth * total);
    } else {
      result.precisions[n] = 100.0 * static_cast<double>(result.correct[n]) / total;
    }
  }
  double log_sum = 0.0;
  for (double p : result.precisions) log_sum += SafeLog(p);
  result.score = result.brevity_penalty * std::exp(log_sum / static_cast<double>(kMaxOrder));
  return result;
}

}  // namespace simulstream::evaluation
