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

#include "evaluation/metrics.hpp"

#include <algorithm>

#include "common/error.hpp"
#include "evaluation/mwer.hpp"

namespace simulstream::evaluation {

std::optional<double> SegmentLaal(std::span<const TimedWord> hyp, const ReferenceSegment& ref,
                                  LatencyMode mode) {
  const std::size_t m = hyp.size();
  if (m == 0) return std::nullopt;
  const double duration = ref.duration_s;
  const double n = static_cast<double>(std::max(m, ref.word_count()));
  double sum = 0.0;
  std::size_t tau = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double g = std::max(0.0, hyp[i].time(mode) - ref.start_s);
    sum += g - static_cast<double>(i) * duration / n;
    tau = i + 1;
    if (g >= duration) break;
  }
  return sum / static_cast<double>(tau);
}

StreamLaalResult StreamLaalOverSpans(const std::vector<std::vector<TimedWord>>& spans,
                                     const std::vector<ReferenceSegment>& refs, LatencyMode mode) {
  if (spans.size() != refs.size()) {
    Fail(ErrorCode::kInvalidArgument, "one hypothesis span per reference segment is required");
  }
  StreamLaalResult result;
  double total = 0.0;
  for (std::size_t k = 0; k < refs.size(); ++k) {
    const auto lag = SegmentLaal(spans[k], refs[k], mode);
    if (!lag) {
      ++result.skipped_segments;
      continue;
    }
    total += *lag;
    ++result.scored_segments;
  }
  if (result.scored_segments == 0) {
    Fail(ErrorCode::kUndefinedResult, "latency undefined: every hypothesis segment is empty");
  }
  result.latency_s = total / static_cast<double>(result.scored_segments);
  return result;
}

StreamLaalResult StreamLaal(const std::vector<TimedWord>& words,
                            const std::vector<ReferenceSegment>& refs, LatencyMode mode) {
  std::vector<std::string> hyp;
  hyp.reserve(words.size());
  for (const auto& w : words) hyp.push_back(w.word);
  std::vector<std::vector<std::string>> ref_words;
  for (const auto& ref : refs) ref_words.push_back(ref.words());
  const MwerAlignment alignment = MwerAlign(hyp, ref_words);
  return StreamLaalOverSpans(SplitAt(words, alignment.boundaries), refs, mode);
}

double NormalizedErasure(const SessionTotals& totals) {
  if (totals.final_tokens == 0) {
    Fail(ErrorCode::kUndefinedResult, "normalized erasure undefined: no final tokens");
  }
  return static_cast<double>(totals.deleted_tokens) / static_cast<double>(totals.final_tokens);
}

double RealTimeFactor(const SessionTotals& totals) {
  if (totals.total_audio_s <= 0.0) {
    Fail(ErrorCode::kUndefinedResult, "real-time factor undefined: no audio processed");
  }
  return totals.total_computation_s / totals.total_audio_s;
}

}  // namespace simulstream::evaluation
