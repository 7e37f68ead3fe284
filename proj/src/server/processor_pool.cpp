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

#include "server/processor_pool.hpp"

#include <algorithm>

#include "common/error.hpp"

namespace simulstream::server {

ProcessorLease::ProcessorLease(ProcessorLease&& other) noexcept
    : pool_(other.pool_), slot_(other.slot_), processor_(other.processor_) {
  other.pool_ = nullptr;
}

ProcessorLease::~ProcessorLease() {
  if (!pool_) return;
  try {
    processor_->ClearState();
  } catch (...) {
    // The slot is still returned; the next session clears state again.
  }
  pool_->Release(slot_);
}

ProcessorPool::ProcessorPool(std::vector<std::unique_ptr<processors::SpeechProcessor>> processors)
    : processors_(std::move(processors)), busy_(processors_.size(), false) {
  if (processors_.empty()) Fail(ErrorCode::kConfig, "pool_size must be >= 1");
}

std::optional<ProcessorLease> ProcessorPool::TryAcquire() {
  std::lock_guard lock(mutex_);
  for (std::size_t i = 0; i < busy_.size(); ++i) {
    if (!busy_[i]) {
      busy_[i] = true;
      return ProcessorLease(this, i, processors_[i].get());
    }
  }
  return std::nullopt;
}

std::size_t ProcessorPool::busy() const {
  std::lock_guard lock(mutex_);
  return static_cast<std::size_t>(std::count(busy_.begin(), busy_.end(), true));
}

void ProcessorPool::Release(std::size_t slot) {
  std::lock_guard lock(mutex_);
  busy_[slot] = false;
}

}  // namespace simulstream::server
