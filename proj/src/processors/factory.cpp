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

#include "processors/factory.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

#include "common/error.hpp"
#include "processors/bridge.hpp"
#include "processors/scripted.hpp"
#include "processors/sliding_window.hpp"
#include "processors/streamatt.hpp"
#include "processors/vad.hpp"

namespace simulstream::processors {

namespace fs = std::filesystem;

namespace {

template <typename T>
T Get(const YAML::Node& node, const char* key, T fallback) {
  const YAML::Node value = node[key];
  if (!value) return fallback;
  try {
    return value.as<T>();
  } catch (const YAML::Exception&) {
    Fail(ErrorCode::kConfig, std::string("processor key \"") + key + "\" has the wrong type");
  }
}

fs::path Resolve(const fs::path& base_dir, const std::string& path) {
  const fs::path p(path);
  return p.is_absolute() ? p : base_dir / p;
}

std::vector<std::string> Command(const YAML::Node& node) {
  const YAML::Node cmd = node["command"];
  if (!cmd) Fail(ErrorCode::kConfig, "bridge needs a \"command\"");
  if (cmd.IsSequence()) return cmd.as<std::vector<std::string>>();
  return {cmd.as<std::string>()};
}

Script LoadScript(const YAML::Node& node, const fs::path& base_dir) {
  const auto path = Get<std::string>(node, "script_path", "");
  if (path.empty()) Fail(ErrorCode::kConfig, "scripted model needs a \"script_path\"");
  return Script::FromFile(Resolve(base_dir, path));
}

BridgeConfig BridgeSettings(const YAML::Node& node) {
  BridgeConfig config;
  config.command = Command(node);
  config.timeout_s = Get(node, "timeout_s", config.timeout_s);
  config.attention = Get(node, "attention", config.attention);
  return config;
}

std::shared_ptr<Generator> ModelFor(const YAML::Node& node, const fs::path& base_dir) {
  if (node["generator"]) return BuildGenerator(node["generator"], base_dir);
  if (node["script_path"]) {
    YAML::Node inline_node = YAML::Clone(node);
    inline_node["type"] = "scripted";
    return BuildGenerator(inline_node, base_dir);
  }
  if (node["command"]) {
    YAML::Node inline_node = YAML::Clone(node);
    inline_node["type"] = "bridge";
    return BuildGenerator(inline_node, base_dir);
  }
  Fail(ErrorCode::kConfig, "processor needs a generator, script_path or command");
}

}  // namespace

std::shared_ptr<Generator> BuildGenerator(const YAML::Node& node, const fs::path& base_dir) {
  const auto type = Get<std::string>(node, "type", "");
  if (type == "scripted") {
    return std::make_shared<ScriptedGenerator>(LoadScript(node, base_dir),
                                               Get(node, "frame_duration_s", 0.08));
  }
  if (type == "bridge") return std::make_shared<BridgeGenerator>(BridgeSettings(node));
  Fail(ErrorCode::kConfig, "unknown generator type \"" + type + "\"");
}

std::unique_ptr<SpeechProcessor> BuildProcessor(const YAML::Node& node,
                                                const fs::path& base_dir) {
  if (!node.IsMap()) Fail(ErrorCode::kConfig, "processor config must be a map");
  const auto type = Get<std::string>(node, "type", "");

  if (type == "sliding_window") {
    SlidingWindowConfig config;
    config.window_s = Get(node, "window_s", config.window_s);
    config.stride_s = Get(node, "stride_s", config.stride_s);
    return std::make_unique<SlidingWindowProcessor>(config, ModelFor(node, base_dir));
  }
  if (type == "streamatt") {
    StreamAttConfig config;
    config.cutoff_frames = Get(node, "cutoff_frames", config.cutoff_frames);
    config.chunk_s = Get(node, "chunk_s", config.chunk_s);
    config.max_history_words = Get(node, "max_history_words", config.max_history_words);
    config.flush_on_finalize = Get(node, "flush_on_finalize", config.flush_on_finalize);
    return std::make_unique<StreamAttProcessor>(config, ModelFor(node, base_dir));
  }
  if (type == "vad") {
    VadConfig config;
    config.threshold = Get(node, "threshold", config.threshold);
    config.frame_ms = Get(node, "frame_ms", config.frame_ms);
    config.hangover_frames = Get(node, "hangover_frames", config.hangover_frames);
    config.chunk_s = Get(node, "chunk_s", config.chunk_s);
    if (!node["inner"]) Fail(ErrorCode::kConfig, "vad needs an \"inner\" processor");
    return std::make_unique<VadProcessor>(config, BuildProcessor(node["inner"], base_dir));
  }
  if (type == "scripted") {
    ScriptedProcessorConfig config;
    config.chunk_s = Get(node, "chunk_s", config.chunk_s);
    config.languages = Get(node, "languages", config.languages);
    if (node["fail_on_chunk"]) config.fail_on_chunk = Get(node, "fail_on_chunk", 0);
    return std::make_unique<ScriptedProcessor>(LoadScript(node, base_dir), config);
  }
  if (type == "bridge") {
    BridgeProcessorConfig config;
    config.chunk_s = Get(node, "chunk_s", config.chunk_s);
    config.max_window_s = Get(node, "max_window_s", config.max_window_s);
    return std::make_unique<BridgeProcessor>(
        config, std::make_shared<BridgeGenerator>(BridgeSettings(node)));
  }
  Fail(ErrorCode::kConfig, "unknown processor type \"" + type + "\"");
}

ProcessorFactory::ProcessorFactory(std::string yaml, fs::path base_dir)
    : yaml_(std::move(yaml)), base_dir_(std::move(base_dir)) {
  Create();
}

ProcessorFactory::ProcessorFactory(const fs::path& yaml_path)
    : base_dir_(yaml_path.parent_path()) {
  std::ifstream in(yaml_path);
  if (!in) Fail(ErrorCode::kConfig, "cannot open processor config " + yaml_path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  yaml_ = buffer.str();
  Create();
}

ProcessorFactory ProcessorFactory::FromString(const std::string& yaml,
                                              const fs::path& base_dir) {
  return ProcessorFactory(yaml, base_dir);
}

std::unique_ptr<SpeechProcessor> ProcessorFactory::Create() const {
  YAML::Node node;
  try {
    node = YAML::Load(yaml_);
  } catch (const YAML::Exception& e) {
    Fail(ErrorCode::kConfig, std::string("invalid processor YAML: ") + e.what());
  }
  auto processor = BuildProcessor(node, base_dir_);
  processor->Load();
  return processor;
}

}  // namespace simulstream::processors
