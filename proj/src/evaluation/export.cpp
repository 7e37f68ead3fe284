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

#include "evaluation/export.hpp"

#include <fstream>

#include "common/error.hpp"

namespace simulstream::evaluation {

namespace {

std::string OneLine(std::string text) {
  for (char& c : text) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

std::ofstream OpenOut(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path.string());
  return out;
}

std::vector<std::string> ReadLines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

void ExportForExternalScorer(const std::vector<ScoredSegment>& segments,
                             const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) Fail(ErrorCode::kIo, "cannot create " + out_dir.string() + ": " + ec.message());
  auto hyp = OpenOut(out_dir / "hyp.txt");
  auto ref = OpenOut(out_dir / "ref.txt");
  auto manifest = OpenOut(out_dir / "manifest.tsv");
  for (std::size_t line = 0; line < segments.size(); ++line) {
    const auto& seg = segments[line];
    hyp << OneLine(seg.hypothesis) << '\n';
    ref << OneLine(seg.reference) << '\n';
    manifest << line + 1 << '\t' << seg.audio_id << '\t' << seg.index << '\n';
  }
  hyp.flush();
  ref.flush();
  manifest.flush();
  if (!hyp || !ref || !manifest) Fail(ErrorCode::kIo, "failed writing " + out_dir.string());
}

std::vector<ScoredSegment> ReadExport(const std::filesystem::path& out_dir) {
  const auto hyps = ReadLines(out_dir / "hyp.txt");
  const auto refs = ReadLines(out_dir / "ref.txt");
  const auto manifest = ReadLines(out_dir / "manifest.tsv");
  if (hyps.size() != refs.size() || hyps.size() != manifest.size()) {
    Fail(ErrorCode::kStructure, "export files in " + out_dir.string() + " differ in length");
  }
  std::vector<ScoredSegment> segments;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    const auto& row = manifest[i];
    const auto first = row.find('\t');
    const auto second = row.find('\t', first + 1);
    if (first == std::string::npos || second == std::string::npos) {
      Fail(ErrorCode::kStructure, "malformed manifest line " + std::to_string(i + 1));
    }
    segments.push_back({row.substr(first + 1, second - first - 1),
                        static_cast<std::size_t>(std::stoul(row.substr(second + 1))), hyps[i],
                        refs[i]});
  }
  return segments;
}

}  // namespace simulstream::evaluation
