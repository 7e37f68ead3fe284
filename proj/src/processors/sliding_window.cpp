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

#include "processors/sliding_window.hpp"

#include <unordered_map>

#include "common/error.hpp"
#include "processors/lcs.hpp"

namespace simulstream::processors {

SlidingWindowProcessor::SlidingWindowProcessor(SlidingWindowConfig config,
                                               std::shared_ptr<Generator> generator)
    : config_(config), generator_(std::move(generator)) {
  if (!(config_.stride_s > 0.0) || config_.stride_s > config_.window_s) {
    Fail(ErrorCode::kConfig, "sliding window needs 0 < stride_s <= window_s");
  }
  if (!generator_) Fail(ErrorCode::kConfig, "sliding window needs a generator");
}

void SlidingWindowProcessor::SetLanguages(const std::string& source,
                                          const std::string& target) {
  source_lang_ = source;
  target_lang_ = target;
}

void SlidingWindowProcessor::ClearState() {
  window_.clear();
  window_start_sample_ = 0;
  pending_samples_ = 0;
  generated_window_samples_ = 0;
  dropped_since_generation_ = 0;
  previous_.clear();
  display_.clear();
  committed_ = 0;
  links_.clear();
}

std::vector<IncrementalOutput> SlidingWindowProcessor::ProcessChunk(const AudioChunk& chunk) {
  window_.insert(window_.end(), chunk.samples.begin(), chunk.samples.end());
  pending_samples_ += chunk.samples.size();
  const std::size_t capacity = protocol::SecondsToSamples(config_.window_s);
  if (window_.size() > capacity) {
    const std::size_t excess = window_.size() - capacity;
    window_.erase(window_.begin(), window_.begin() + static_cast<std::ptrdiff_t>(excess));
    window_start_sample_ += excess;
    dropped_since_generation_ += excess;
  }
  if (pending_samples_ < protocol::SecondsToSamples(config_.stride_s)) return {};
  return Step();
}

std::vector<IncrementalOutput> SlidingWindowProcessor::Finalize() {
  std::vector<IncrementalOutput> outputs;
  if (pending_samples_ > 0) outputs = Step();
  committed_ = display_.size();
  links_.clear();
  return outputs;
}

void SlidingWindowProcessor::CommitLeavingShare(std::size_t dropped_samples,
                                                std::size_t window_samples) {
  if (previous_.empty() || window_samples == 0) return;
  const std::size_t leaving =
      dropped_samples >= window_samples
          ? previous_.size()
          : previous_.size() * dropped_samples / window_samples;
  // Commit the revisable prefix through the last token linked into the
  // leaving share.
  std::size_t commit_through = 0;
  for (std::size_t k = 0; k < links_.size(); ++k) {
    if (links_[k] >= 0 && static_cast<std::size_t>(links_[k]) < leaving) {
      commit_through = k + 1;
    }
  }
  committed_ += commit_through;
  links_.erase(links_.begin(), links_.begin() + static_cast<std::ptrdiff_t>(commit_through));
}

std::vector<IncrementalOutput> SlidingWindowProcessor::Step() {
  if (dropped_since_generation_ > 0) {
    CommitLeavingShare(dropped_since_generation_, generated_window_samples_);
  }
  pending_samples_ = 0;
  dropped_since_generation_ = 0;
  if (window_.empty()) return {};

  GeneratorRequest request;
  request.audio = window_;
  request.window_start_s = protocol::SamplesToSeconds(window_start_sample_);
  request.source_lang = source_lang_;
  request.target_lang = target_lang_;
  std::vector<std::string> current = generator_->Generate(request).tokens;
  generated_window_samples_ = window_.size();

  const auto pairs = LongestCommonSubsequence(previous_, current);
  const long last_prev = pairs.empty() ? -1 : static_cast<long>(pairs.back().first);
  const std::size_t resume = pairs.empty() ? 0 : pairs.back().second + 1;

  std::size_t keep = links_.size();
  for (std::size_t k = 0; k < links_.size(); ++k) {
    if (links_[k] > last_prev) {
      keep = k;
      break;
    }
  }

  std::unordered_map<long, long> relink;
  for (const auto& [p, c] : pairs) relink[static_cast<long>(p)] = static_cast<long>(c);

  IncrementalOutput out;
  out.delete_count = links_.size() - keep;
  links_.resize(keep);
  for (long& link : links_) {
    const auto it = link >= 0 ? relink.find(link) : relink.end();
    link = it == relink.end() ? -1 : it->second;
  }
  display_.resize(display_.size() - out.delete_count);
  for (std::size_t c = resume; c < current.size(); ++c) {
    out.append_tokens.push_back(current[c]);
    display_.push_back(current[c]);
    links_.push_back(static_cast<long>(c));
  }
  previous_ = std::move(current);
  if (out.empty()) return {};
  return {std::move(out)};
}

}  // namespace simulstream::processors
