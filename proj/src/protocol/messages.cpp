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

#include "protocol/messages.hpp"

#include <cctype>
#include <nlohmann/json.hpp>

#include "common/error.hpp"

namespace simulstream::protocol {

using nlohmann::json;

IncrementalOutput Compose(const std::vector<IncrementalOutput>& outputs) {
  IncrementalOutput net;
  for (const auto& out : outputs) {
    if (out.delete_count <= net.append_tokens.size()) {
      net.append_tokens.resize(net.append_tokens.size() - out.delete_count);
    } else {
      net.delete_count += out.delete_count - net.append_tokens.size();
      net.append_tokens.clear();
    }
    net.append_tokens.insert(net.append_tokens.end(), out.append_tokens.begin(),
                             out.append_tokens.end());
  }
  return net;
}

void ApplyOutput(std::vector<std::string>& display, const IncrementalOutput& out) {
  if (out.delete_count > display.size()) {
    Fail(ErrorCode::kStructure,
         "output deletes " + std::to_string(out.delete_count) +
             " tokens but only " + std::to_string(display.size()) +
             " are displayed");
  }
  display.resize(display.size() - out.delete_count);
  display.insert(display.end(), out.append_tokens.begin(), out.append_tokens.end());
}

std::string JoinTokens(const std::vector<std::string>& tokens) {
  std::string text;
  for (const auto& t : tokens) text += t;
  return text;
}

std::vector<std::string> SplitWords(std::string_view text) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) words.emplace_back(text.substr(start, i - start));
  }
  return words;
}

namespace {

struct Serializer {
  json operator()(const ConfigMessage& m) const {
    return {{"type", "config"},
            {"source_lang", m.config.source_lang},
            {"target_lang", m.config.target_lang},
            {"audio_id", m.config.audio_id}};
  }
  json operator()(const OutputMessage& m) const {
    return {{"type", "output"},
            {"delete", m.output.delete_count},
            {"append", m.output.append_tokens},
            {"audio_processed_s", m.audio_processed_s}};
  }
  json operator()(const ErrorMessage& m) const {
    return {{"type", "error"}, {"reason", m.reason}};
  }
  json operator()(const EosMessage&) const { return {{"type", "eos"}}; }
};

template <typename T>
T Require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    Fail(ErrorCode::kProtocol, std::string("message is missing \"") + key + "\"");
  }
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    Fail(ErrorCode::kProtocol, std::string("message field \"") + key +
                                   "\" has the wrong type");
  }
}

}  // namespace

std::string SerializeMessage(const ControlMessage& message) {
  return std::visit(Serializer{}, message).dump();
}

ControlMessage ParseMessage(std::string_view text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    Fail(ErrorCode::kProtocol, "control message is not a JSON object");
  }
  const auto type = Require<std::string>(j, "type");
  if (type == "config") {
    ConfigMessage m;
    m.config.source_lang = Require<std::string>(j, "source_lang");
    m.config.target_lang = Require<std::string>(j, "target_lang");
    m.config.audio_id = j.value("audio_id", std::string{});
    if (m.config.source_lang.empty() || m.config.target_lang.empty()) {
      Fail(ErrorCode::kProtocol, "config message has an empty language code");
    }
    return m;
  }
  if (type == "output") {
    OutputMessage m;
    if (j.contains("delete") && !j["delete"].is_number_unsigned()) {
      Fail(ErrorCode::kProtocol, "\"delete\" must be a non-negative integer");
    }
    m.output.delete_count = Require<std::size_t>(j, "delete");
    m.output.append_tokens = Require<std::vector<std::string>>(j, "append");
    m.audio_processed_s = Require<double>(j, "audio_processed_s");
    return m;
  }
  if (type == "error") return ErrorMessage{Require<std::string>(j, "reason")};
  if (type == "eos") return EosMessage{};
  Fail(ErrorCode::kProtocol, "unknown control message type \"" + type + "\"");
}

}  // namespace simulstream::protocol
