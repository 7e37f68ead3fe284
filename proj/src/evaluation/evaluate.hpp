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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "evaluation/bleu.hpp"
#include "evaluation/export.hpp"
#include "evaluation/references.hpp"
#include "protocol/metric_log.hpp"

namespace simulstream::evaluation {

struct EvaluateOptions {
  bool ideal_latency = true;
  bool ca_latency = true;
};

// Metrics that cannot be computed for an audio (no final tokens, no audio,
// every segment empty) are nullopt and left out of the corpus averages.
struct AudioReport {
  std::string audio_id;
  double bleu = 0.0;
  std::optional<double> stream_laal_s;
  std::optional<double> stream_laal_ca_s;
  std::optional<double> normalized_erasure;
  std::optional<double> rtf;
  bool slower_than_realtime = false;
  std::size_t segments = 0;
  std::size_t skipped_segments = 0;
  std::size_t deleted_tokens = 0;
  std::size_t final_tokens = 0;
  double computation_s = 0.0;
  double audio_s = 0.0;
};

struct CorpusReport {
  BleuScore bleu;  // pooled over every segment of every audio
  std::optional<double> stream_laal_s;
  std::optional<double> stream_laal_ca_s;
  std::optional<double> normalized_erasure;
  std::optional<double> rtf;
  bool slower_than_realtime = false;
  std::size_t audios = 0;
  std::size_t segments = 0;
  std::size_t skipped_segments = 0;
};

struct EvaluationReport {
  std::vector<AudioReport> audios;  // ordered by audio_id
  CorpusReport corpus;
  std::vector<ScoredSegment> segments;
  EvaluateOptions options;
};

// Throws Error(kInvalidArgument) for an empty log or an audio_id without
// references.
EvaluationReport Evaluate(const protocol::ParsedLog& log, const ReferenceSet& refs,
                          const EvaluateOptions& options = {});
EvaluationReport EvaluateFiles(const std::filesystem::path& log_path,
                               const std::filesystem::path& refs_path,
                               const EvaluateOptions& options = {});

std::string ReportToJson(const EvaluationReport& report);
std::string ReportToTable(const EvaluationReport& report);

}  // namespace simulstream::evaluation
