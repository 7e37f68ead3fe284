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

#include "processors/scripted.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "common/error.hpp"

namespace simulstream::processors {

using nlohmann::json;

namespace {

constexpr double kTimeEpsilon = 1e-9;

// Attention mass placed on the frames next to the peak.
constexpr double kNeighbourWeight = 0.1;

}  // namespace

Script Script::FromJson(const std::string& text) {
  const json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    Fail(ErrorCode::kConfig, "script is not a JSON object");
  }
  Script script;
  try {
    for (const auto& e : j.value("entries", json::array())) {
      Entry entry;
      entry.start_s = e.at("start").get<double>();
      entry.end_s = e.at("end").get<double>();
      entry.tokens = e.at("tokens").get<std::vector<std::string>>();
      if (entry.end_s < entry.start_s) {
        Fail(ErrorCode::kConfig, "script entry ends before it starts");
      }
      if (e.contains("align")) {
        entry.align_s = e.at("align").get<std::vector<double>>();
        if (entry.align_s.size() != entry.tokens.size()) {
          Fail(ErrorCode::kConfig, "script entry align/tokens length mismatch");
        }
      } else {
        entry.align_s.assign(entry.tokens.size(), entry.end_s);
      }
      script.entries.push_back(std::move(entry));
    }
    for (const auto& s : j.value("steps", json::array())) {
      script.steps.push_back({s.value("delete", std::size_t{0}),
                              s.value("append", std::vector<std::string>{})});
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kConfig, std::string("bad script: ") + e.what());
  }
  std::stable_sort(script.entries.begin(), script.entries.end(),
                   [](const Entry& a, const Entry& b) { return a.start_s < b.start_s; });
  return script;
}

Script Script::FromFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kConfig, "cannot open script " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return FromJson(buffer.str());
}

std::vector<std::string> StripForcedPrefix(const std::vector<std::string>& tokens,
                                           const std::vector<std::string>& prefix) {
  if (prefix.empty()) return tokens;
  // Earliest position q where tokens[..q] ends like the prefix does.
  const std::size_t plen = prefix.size();
  for (std::size_t q = 0; q < tokens.size(); ++q) {
    if (tokens[q] != prefix.back()) continue;
    const std::size_t span = std::min(q, plen - 1);
    bool ok = true;
    for (std::size_t k = 1; k <= span && ok; ++k) {
      ok = tokens[q - k] == prefix[plen - 1 - k];
    }
    if (ok) return {tokens.begin() + static_cast<std::ptrdiff_t>(q) + 1, tokens.end()};
  }
  return tokens;
}

ScriptedGenerator::ScriptedGenerator(Script script, double frame_duration_s)
    : script_(std::move(script)), frame_duration_s_(frame_duration_s) {
  if (!(frame_duration_s_ > 0.0)) {
    Fail(ErrorCode::kConfig, "frame_duration_s must be positive");
  }
}

GeneratorOutput ScriptedGenerator::Generate(const GeneratorRequest& request) {
  GeneratorOutput out;
  out.frame_duration_s = frame_duration_s_;
  if (request.audio.empty()) return out;

  const double begin = request.window_start_s;
  const double end = begin + protocol::SamplesToSeconds(request.audio.size());
  std::vector<std::string> tokens;
  std::vector<double> aligns;
  for (const auto& e : script_.entries) {
    if (e.start_s + kTimeEpsilon >= begin && e.end_s <= end + kTimeEpsilon) {
      tokens.insert(tokens.end(), e.tokens.begin(), e.tokens.end());
      aligns.insert(aligns.end(), e.align_s.begin(), e.align_s.end());
    }
  }
  out.tokens = StripForcedPrefix(tokens, request.forced_prefix);
  const std::size_t skipped = tokens.size() - out.tokens.size();

  const auto frames = static_cast<std::size_t>(
      std::ceil((end - begin) / frame_duration_s_ - kTimeEpsilon));
  AttentionMatrix attention(out.tokens.size(), std::max<std::size_t>(frames, 1));
  for (std::size_t i = 0; i < out.tokens.size(); ++i) {
    const double rel = (aligns[skipped + i] - begin) / frame_duration_s_;
    const auto last = static_cast<long>(attention.frames()) - 1;
    const long peak = std::clamp(static_cast<long>(std::floor(rel + kTimeEpsilon)), 0L, last);
    double spread = 0.0;
    for (long n : {peak - 1, peak + 1}) {
      if (n >= 0 && n <= last) {
        attention.at(i, static_cast<std::size_t>(n)) = kNeighbourWeight;
        spread += kNeighbourWeight;
      }
    }
    attention.at(i, static_cast<std::size_t>(peak)) = 1.0 - spread;
  }
  out.attention = std::move(attention);
  return out;
}

ScriptedProcessor::ScriptedProcessor(Script script, ScriptedProcessorConfig config)
    : script_(std::move(script)), config_(std::move(config)) {
  if (!(config_.chunk_s > 0.0)) Fail(ErrorCode::kConfig, "chunk_s must be positive");
}

void ScriptedProcessor::SetLanguages(const std::string& source, const std::string& target) {
  if (config_.languages.empty()) return;
  for (const auto& lang : {source, target}) {
    if (std::find(config_.languages.begin(), config_.languages.end(), lang) ==
        config_.languages.end()) {
      Fail(ErrorCode::kUnsupportedLanguage, "unsupported language \"" + lang + "\"");
    }
  }
}

void ScriptedProcessor::ClearState() {
  consumed_samples_ = 0;
  next_entry_ = 0;
  chunks_seen_ = 0;
}

std::vector<IncrementalOutput> ScriptedProcessor::ProcessChunk(const AudioChunk& chunk) {
  ++chunks_seen_;
  if (config_.fail_on_chunk && *config_.fail_on_chunk == chunks_seen_) {
    Fail(ErrorCode::kProcessor, "scripted failure on chunk " + std::to_string(chunks_seen_));
  }
  consumed_samples_ += chunk.samples.size();
  if (!script_.steps.empty()) {
    const auto index = static_cast<std::size_t>(chunks_seen_ - 1);
    if (index < script_.steps.size() && !script_.steps[index].empty()) {
      return {script_.steps[index]};
    }
    return {};
  }
  return EmitReady();
}

std::vector<IncrementalOutput> ScriptedProcessor::Finalize() {
  if (!script_.steps.empty()) return {};
  return EmitReady();
}

std::vector<IncrementalOutput> ScriptedProcessor::EmitReady() {
  const double consumed = protocol::SamplesToSeconds(consumed_samples_);
  IncrementalOutput out;
  while (next_entry_ < script_.entries.size() &&
         script_.entries[next_entry_].end_s <= consumed + kTimeEpsilon) {
    const auto& tokens = script_.entries[next_entry_].tokens;
    out.append_tokens.insert(out.append_tokens.end(), tokens.begin(), tokens.end());
    ++next_entry_;
  }
  if (out.empty()) return {};
  return {std::move(out)};
}

}  // namespace simulstream::processors
