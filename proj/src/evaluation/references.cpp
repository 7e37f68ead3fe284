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

#include "evaluation/references.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "common/error.hpp"
#include "protocol/messages.hpp"

namespace simulstream::evaluation {

namespace {

constexpr double kOverlapTolerance = 1e-9;

double NumberField(const nlohmann::json& entry, const char* key, const char* alt,
                   const std::string& where) {
  for (const char* name : {key, alt}) {
    const auto it = entry.find(name);
    if (it != entry.end() && it->is_number()) return it->get<double>();
  }
  Fail(ErrorCode::kInvalidArgument, where + ": missing numeric \"" + key + "\"");
}

double ParseNumber(const std::string& text, const std::string& where) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    Fail(ErrorCode::kInvalidArgument, where + ": not a number: \"" + text + "\"");
  }
  return value;
}

void Validate(ReferenceSet& refs) {
  for (auto& [audio_id, segments] : refs) {
    std::stable_sort(segments.begin(), segments.end(),
                     [](const auto& a, const auto& b) { return a.start_s < b.start_s; });
    for (std::size_t k = 0; k < segments.size(); ++k) {
      const auto& seg = segments[k];
      if (!(seg.duration_s > 0.0)) {
        Fail(ErrorCode::kInvalidArgument, "reference " + std::to_string(k) + " of " + audio_id +
                                              " has non-positive duration");
      }
      if (k > 0) {
        const auto& prev = segments[k - 1];
        if (seg.start_s < prev.start_s + prev.duration_s - kOverlapTolerance) {
          Fail(ErrorCode::kInvalidArgument,
               "references " + std::to_string(k - 1) + " and " + std::to_string(k) + " of " +
                   audio_id + " overlap");
        }
      }
    }
  }
}

ReferenceSet ParseJson(const std::string& content) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(content);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kInvalidArgument, std::string("malformed reference JSON: ") + e.what());
  }
  if (!doc.is_object()) Fail(ErrorCode::kInvalidArgument, "reference JSON must be an object");
  ReferenceSet refs;
  for (const auto& [audio_id, list] : doc.items()) {
    if (!list.is_array()) {
      Fail(ErrorCode::kInvalidArgument, "references for " + audio_id + " must be a list");
    }
    auto& segments = refs[audio_id];
    for (std::size_t k = 0; k < list.size(); ++k) {
      const auto& entry = list[k];
      const std::string where = audio_id + "[" + std::to_string(k) + "]";
      if (!entry.is_object() || !entry.contains("text") || !entry["text"].is_string()) {
        Fail(ErrorCode::kInvalidArgument, where + ": missing \"text\"");
      }
      segments.push_back({entry["text"].get<std::string>(),
                          NumberField(entry, "start", "start_s", where),
                          NumberField(entry, "duration", "duration_s", where)});
    }
  }
  return refs;
}

ReferenceSet ParseTsv(const std::string& content) {
  ReferenceSet refs;
  std::istringstream in(content);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::string where = "line " + std::to_string(line_number);
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (int k = 0; k < 3; ++k) {
      const std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        Fail(ErrorCode::kInvalidArgument, where + ": expected audio_id, start, duration, text");
      }
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    refs[fields[0]].push_back(
        {line.substr(start), ParseNumber(fields[1], where), ParseNumber(fields[2], where)});
  }
  return refs;
}

}  // namespace

std::vector<std::string> ReferenceSegment::words() const { return protocol::SplitWords(text); }

ReferenceSet ParseReferences(const std::string& content) {
  const auto first = content.find_first_not_of(" \t\r\n");
  ReferenceSet refs = (first != std::string::npos && content[first] == '{') ? ParseJson(content)
                                                                             : ParseTsv(content);
  Validate(refs);
  return refs;
}

ReferenceSet LoadReferences(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open references " + path.string());
  std::ostringstream content;
  content << in.rdbuf();
  return ParseReferences(content.str());
}

}  // namespace simulstream::evaluation
