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
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "processors/processor.hpp"

namespace simulstream::server {

class ProcessorPool;

/// Exclusive use of one pooled processor. Clears the processor's state and
/// returns it to the pool when destroyed.
class ProcessorLease {
 public:
  ProcessorLease(ProcessorLease&& other) noexcept;
  ProcessorLease& operator=(ProcessorLease&&) = delete;
  ProcessorLease(const ProcessorLease&) = delete;
  ~ProcessorLease();

  processors::SpeechProcessor& operator*() const { return *processor_; }
  processors::SpeechProcessor* operator->() const { return processor_; }

 private:
  friend class ProcessorPool;
  ProcessorLease(ProcessorPool* pool, std::size_t slot, processors::SpeechProcessor* p)
      : pool_(pool), slot_(slot), processor_(p) {}

  ProcessorPool* pool_;
  std::size_t slot_;
  processors::SpeechProcessor* processor_;
};

/// Fixed set of processors. Acquisition never blocks: when every processor is
/// busy the caller is refused.
class ProcessorPool {
 public:
  explicit ProcessorPool(std::vector<std::unique_ptr<processors::SpeechProcessor>> processors);

  std::optional<ProcessorLease> TryAcquire();

  std::size_t size() const { return processors_.size(); }
  std::size_t busy() const;

 private:
  friend class ProcessorLease;
  void Release(std::size_t slot);

  std::vector<std::unique_ptr<processors::SpeechProcessor>> processors_;
  mutable std::mutex mutex_;
  std::vector<bool> busy_;
};

}  // namespace simulstream::server
