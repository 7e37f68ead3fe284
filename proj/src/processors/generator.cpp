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

#include "processors/generator.hpp"

#include <cmath>
#include <string>

#include "common/error.hpp"

namespace simulstream::processors {

std::size_t AttentionMatrix::ArgmaxFrame(std::size_t r) const {
  std::size_t best = 0;
  for (std::size_t f = 1; f < frames_; ++f) {
    if (at(r, f) > at(r, best)) best = f;
  }
  return best;
}

void AttentionMatrix::Validate(double tolerance) const {
  for (std::size_t r = 0; r < rows_; ++r) {
    double sum = 0.0;
    for (double w : row(r)) {
      if (!(w >= 0.0)) {
        Fail(ErrorCode::kProtocol, "attention row " + std::to_string(r) +
                                       " has a negative weight");
      }
      sum += w;
    }
    if (std::abs(sum - 1.0) > tolerance) {
      Fail(ErrorCode::kProtocol, "attention row " + std::to_string(r) +
                                     " sums to " + std::to_string(sum));
    }
  }
}

}  // namespace simulstream::processors
