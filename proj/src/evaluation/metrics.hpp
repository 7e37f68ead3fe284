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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "evaluation/references.hpp"
#include "evaluation/timed_text.hpp"

namespace simulstream::evaluation {

// Length-adaptive average lagging of one segment: g(i) is the word time
// relative to the segment start (clipped at 0), the reference words are
// spread evenly over the segment duration T, and the lag is averaged up to
// the first word emitted at or after T (all m words if none is). Returns
// nullopt for an empty hypothesis.
std::optional<double> SegmentLaal(std::span<const TimedWord> hyp, const ReferenceSegment& ref,
                                  LatencyMode mode);

struct StreamLaalResult {
  double latency_s = 0.0;  // unweighted mean over scored segments
  std::size_t scored_segments = 0;
  std::size_t skipped_segments = 0;
};

// Scores already aligned spans (one per reference).
StreamLaalResult StreamLaalOverSpans(const std::vector<std::vector<TimedWord>>& spans,
                                     const std::vector<ReferenceSegment>& refs, LatencyMode mode);

// Resegments `words` against `refs` and averages SegmentLaal over the
// non-empty spans. Throws Error(kUndefinedResult) if every span is empty.
StreamLaalResult StreamLaal(const std::vector<TimedWord>& words,
                            const std::vector<ReferenceSegment>& refs, LatencyMode mode);

// deleted / final tokens. Throws Error(kUndefinedResult) with no final tokens.
double NormalizedErasure(const SessionTotals& totals);

// Computation seconds per audio second. Throws Error(kUndefinedResult) for
// zero audio.
double RealTimeFactor(const SessionTotals& totals);

}  // namespace simulstream::evaluation
