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

#include "evaluation/tokenizer.hpp"

#include <cctype>
#include <regex>

#include "protocol/messages.hpp"

namespace simulstream::evaluation {

namespace {

void ReplaceAll(std::string& text, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
}

struct Rules {
  std::regex symbols{R"(([{-~\[-` -&(-+:-@/]))"};
  std::regex period_after_non_digit{R"(([^0-9])([.,]))"};
  std::regex period_before_non_digit{R"(([.,])([^0-9]))"};
  std::regex dash_after_digit{R"(([0-9])(-))"};
};

const Rules& GetRules() {
  static const Rules rules;
  return rules;
}

}  // namespace

std::string Tokenize13a(std::string_view input) {
  std::string line(input);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
  ReplaceAll(line, "<skipped>", "");
  ReplaceAll(line, "-\n", "");
  ReplaceAll(line, "\n", " ");
  if (line.find('&') != std::string::npos) {
    ReplaceAll(line, "&quot;", "\"");
    ReplaceAll(line, "&amp;", "&");
    ReplaceAll(line, "&lt;", "<");
    ReplaceAll(line, "&gt;", ">");
  }
  line = " " + line + " ";

  const Rules& rules = GetRules();
  line = std::regex_replace(line, rules.symbols, " $1 ");
  line = std::regex_replace(line, rules.period_after_non_digit, "$1 $2 ");
  line = std::regex_replace(line, rules.period_before_non_digit, " $1 $2");
  line = std::regex_replace(line, rules.dash_after_digit, "$1 $2 ");

  std::string out;
  for (const auto& token : protocol::SplitWords(line)) {
    if (!out.empty()) out += ' ';
    out += token;
  }
  return out;
}

std::vector<std::string> Tokens13a(std::string_view line) {
  return protocol::SplitWords(Tokenize13a(line));
}

}  // namespace simulstream::evaluation
