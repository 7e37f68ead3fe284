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

#include "evaluation/timed_text.hpp"

#include <algorithm>
#include <cctype>

#include "common/error.hpp"

namespace simulstream::evaluation {

namespace {

struct TimedToken {
  std::string text;
  double ideal_s;
  double ca_s;
};

}  // namespace

std::vector<std::string> TimedText::strings() const {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(w.word);
  return out;
}

TimedText ReconstructTimedText(const std::vector<protocol::MetricLogRecord>& records) {
  TimedText result;
  SessionTotals& totals = result.totals;
  std::vector<TimedToken> display;
  for (const auto& record : records) {
    totals.total_computation_s += record.computation_s;
    totals.total_audio_s = std::max(totals.total_audio_s, record.audio_processed_s);
    if (record.delete_count > display.size()) {
      Fail(ErrorCode::kStructure, "audio " + record.audio_id + " step " +
                                      std::to_string(record.step) + " deletes " +
                                      std::to_string(record.delete_count) + " of " +
                                      std::to_string(display.size()) + " tokens");
    }
    totals.deleted_tokens += record.delete_count;
    display.resize(display.size() - record.delete_count);
    const double ca = record.audio_processed_s + totals.total_computation_s;
    for (const auto& token : record.append_tokens) {
      display.push_back({token, record.audio_processed_s, ca});
    }
  }
  totals.final_tokens = display.size();

  bool in_word = false;
  for (const auto& token : display) {
    for (char c : token.text) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        in_word = false;
        continue;
      }
      if (!in_word) {
        result.words.push_back({std::string(), token.ideal_s, token.ca_s});
        in_word = true;
      }
      TimedWord& word = result.words.back();
      word.word += c;
      word.ideal_time_s = std::max(word.ideal_time_s, token.ideal_s);
      word.ca_time_s = std::max(word.ca_time_s, token.ca_s);
    }
  }
  return result;
}

}  // namespace simulstream::evaluation
