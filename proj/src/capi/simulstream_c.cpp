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

#include "simulstream/simulstream.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "clients/direct_runner.hpp"
#include "clients/wav_client.hpp"
#include "common/error.hpp"
#include "evaluation/evaluate.hpp"
#include "processors/factory.hpp"
#include "server/server.hpp"

using namespace simulstream;

struct ss_server {
  server::ServerConfig config;
  processors::ProcessorFactory factory;
  std::unique_ptr<server::Server> instance;
};

struct ss_processor {
  std::unique_ptr<processors::SpeechProcessor> impl;
};

struct ss_outputs {
  std::vector<protocol::IncrementalOutput> items;
};

namespace {

thread_local std::string last_error;

ss_status ToStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return SS_INVALID_ARGUMENT;
    case ErrorCode::kIo: return SS_IO;
    case ErrorCode::kConfig: return SS_CONFIG;
    case ErrorCode::kProtocol: return SS_PROTOCOL;
    case ErrorCode::kProcessor: return SS_PROCESSOR;
    case ErrorCode::kUnsupportedLanguage: return SS_UNSUPPORTED_LANGUAGE;
    case ErrorCode::kStructure: return SS_STRUCTURE;
    case ErrorCode::kUndefinedResult: return SS_UNDEFINED_RESULT;
    case ErrorCode::kRefused: return SS_REFUSED;
  }
  return SS_INTERNAL;
}

template <typename F>
ss_status Guard(F&& body) {
  try {
    body();
    return SS_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return SS_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return SS_INTERNAL;
  }
}

void Require(const void* pointer, const char* name) {
  if (!pointer) Fail(ErrorCode::kInvalidArgument, std::string(name) + " must not be null");
}

std::string OrEmpty(const char* text) { return text ? text : ""; }

char* CopyString(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* ss_last_error(void) { return last_error.c_str(); }

const char* ss_status_name(ss_status status) {
  switch (status) {
    case SS_OK: return "ok";
    case SS_INVALID_ARGUMENT: return "invalid argument";
    case SS_IO: return "i/o error";
    case SS_CONFIG: return "configuration error";
    case SS_PROTOCOL: return "protocol error";
    case SS_PROCESSOR: return "processor error";
    case SS_UNSUPPORTED_LANGUAGE: return "unsupported language";
    case SS_STRUCTURE: return "structural error";
    case SS_UNDEFINED_RESULT: return "undefined result";
    case SS_REFUSED: return "refused";
    case SS_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void ss_free_string(char* text) { std::free(text); }

ss_status ss_server_create(const char* server_yaml, const char* processor_yaml, ss_server** out) {
  return Guard([&] {
    Require(server_yaml, "server_yaml");
    Require(processor_yaml, "processor_yaml");
    Require(out, "out");
    auto config = server::LoadServerConfig(server_yaml, processor_yaml);
    processors::ProcessorFactory factory(processor_yaml);
    *out = new ss_server{std::move(config), std::move(factory), nullptr};
  });
}

ss_status ss_server_set_port(ss_server* server, uint16_t port) {
  return Guard([&] {
    Require(server, "server");
    if (server->instance) Fail(ErrorCode::kInvalidArgument, "server already started");
    server->config.port = port;
  });
}

ss_status ss_server_start(ss_server* server) {
  return Guard([&] {
    Require(server, "server");
    if (server->instance) Fail(ErrorCode::kInvalidArgument, "server already started");
    auto instance = std::make_unique<server::Server>(server->config, server->factory);
    instance->Start();
    server->instance = std::move(instance);
  });
}

uint16_t ss_server_port(const ss_server* server) {
  return server && server->instance ? server->instance->port() : 0;
}

ss_status ss_server_wait(ss_server* server) {
  return Guard([&] {
    Require(server, "server");
    if (!server->instance) Fail(ErrorCode::kInvalidArgument, "server not started");
    server->instance->Wait();
  });
}

ss_status ss_server_stop(ss_server* server) {
  return Guard([&] {
    Require(server, "server");
    if (server->instance) server->instance->Stop();
  });
}

void ss_server_destroy(ss_server* server) {
  if (!server) return;
  try {
    if (server->instance) server->instance->Stop();
  } catch (...) {
  }
  delete server;
}

void ss_stream_options_init(ss_stream_options* options) {
  if (!options) return;
  const clients::StreamOptions defaults;
  options->source_lang = "";
  options->target_lang = "";
  options->pace = SS_PACE_REALTIME;
  options->out_dir = nullptr;
  options->concurrency = defaults.concurrency;
  options->max_retries = defaults.max_retries;
  options->retry_delay_s = defaults.retry_delay_s;
}

ss_status ss_stream_wav_files(const char* list_path, const char* url,
                              const ss_stream_options* options, size_t* failed_files,
                              char** summary_json) {
  return Guard([&] {
    Require(list_path, "list_path");
    Require(url, "url");
    Require(options, "options");
    clients::StreamOptions opts;
    opts.source_lang = OrEmpty(options->source_lang);
    opts.target_lang = OrEmpty(options->target_lang);
    opts.pace = options->pace == SS_PACE_MAX ? clients::Pace::kMax : clients::Pace::kRealtime;
    if (options->out_dir) opts.out_dir = options->out_dir;
    opts.concurrency = options->concurrency == 0 ? 1 : options->concurrency;
    opts.max_retries = options->max_retries;
    opts.retry_delay_s = options->retry_delay_s;

    const auto summary = clients::StreamWavFiles(list_path, url, opts);
    if (failed_files) *failed_files = summary.failed;
    if (summary_json) {
      nlohmann::json files = nlohmann::json::array();
      for (const auto& f : summary.files) {
        files.push_back({{"path", f.path.string()},
                         {"audio_id", f.audio_id},
                         {"ok", f.ok},
                         {"error", f.error},
                         {"retries", f.retries},
                         {"audio_s", f.audio_s},
                         {"send_duration_s", f.send_duration_s},
                         {"text", f.text}});
      }
      const nlohmann::json doc = {
          {"completed", summary.completed}, {"failed", summary.failed}, {"files", files}};
      *summary_json = CopyString(doc.dump(2));
    }
  });
}

ss_status ss_run_direct(const char* list_path, const char* processor_yaml, const char* log_path,
                        const char* source_lang, const char* target_lang, size_t* failed_files,
                        char** summary_json) {
  return Guard([&] {
    Require(list_path, "list_path");
    Require(processor_yaml, "processor_yaml");
    Require(log_path, "log_path");
    const auto summary = clients::RunDirect(list_path, processor_yaml, log_path,
                                            {OrEmpty(source_lang), OrEmpty(target_lang)});
    if (failed_files) *failed_files = summary.failures.size();
    if (summary_json) {
      nlohmann::json failures = nlohmann::json::array();
      for (const auto& f : summary.failures) {
        failures.push_back({{"path", f.path.string()}, {"error", f.error}});
      }
      const nlohmann::json doc = {{"processed", summary.processed}, {"failures", failures}};
      *summary_json = CopyString(doc.dump(2));
    }
  });
}

ss_status ss_evaluate(const char* log_path, const char* refs_path, int latency_modes,
                      const char* export_dir, char** report_json, char** report_table) {
  return Guard([&] {
    Require(log_path, "log_path");
    Require(refs_path, "refs_path");
    evaluation::EvaluateOptions options;
    options.ideal_latency = (latency_modes & SS_LATENCY_IDEAL) != 0;
    options.ca_latency = (latency_modes & SS_LATENCY_CA) != 0;
    if (!options.ideal_latency && !options.ca_latency) {
      Fail(ErrorCode::kInvalidArgument, "at least one latency mode must be selected");
    }
    const auto report = evaluation::EvaluateFiles(log_path, refs_path, options);
    if (export_dir) evaluation::ExportForExternalScorer(report.segments, export_dir);
    // Allocate both before handing either out so a failure leaks nothing.
    std::unique_ptr<char, decltype(&std::free)> json(
        report_json ? CopyString(evaluation::ReportToJson(report)) : nullptr, &std::free);
    std::unique_ptr<char, decltype(&std::free)> table(
        report_table ? CopyString(evaluation::ReportToTable(report)) : nullptr, &std::free);
    if (report_json) *report_json = json.release();
    if (report_table) *report_table = table.release();
  });
}

ss_status ss_processor_create(const char* processor_yaml, ss_processor** out) {
  return Guard([&] {
    Require(processor_yaml, "processor_yaml");
    Require(out, "out");
    const processors::ProcessorFactory factory(processor_yaml);
    *out = new ss_processor{factory.Create()};
  });
}

ss_status ss_processor_set_languages(ss_processor* processor, const char* source_lang,
                                     const char* target_lang) {
  return Guard([&] {
    Require(processor, "processor");
    processor->impl->SetLanguages(OrEmpty(source_lang), OrEmpty(target_lang));
  });
}

ss_status ss_processor_clear_state(ss_processor* processor) {
  return Guard([&] {
    Require(processor, "processor");
    processor->impl->ClearState();
  });
}

double ss_processor_preferred_chunk_s(const ss_processor* processor) {
  return processor ? processor->impl->PreferredChunkSeconds() : 0.0;
}

ss_status ss_processor_process(ss_processor* processor, const float* samples, size_t count,
                               double stream_offset_s, ss_outputs** out) {
  return Guard([&] {
    Require(processor, "processor");
    Require(out, "out");
    if (count > 0) Require(samples, "samples");
    protocol::AudioChunk chunk;
    chunk.samples.assign(samples, samples + count);
    chunk.stream_offset_s = stream_offset_s;
    *out = new ss_outputs{processor->impl->ProcessChunk(chunk)};
  });
}

ss_status ss_processor_finalize(ss_processor* processor, ss_outputs** out) {
  return Guard([&] {
    Require(processor, "processor");
    Require(out, "out");
    *out = new ss_outputs{processor->impl->Finalize()};
  });
}

void ss_processor_destroy(ss_processor* processor) { delete processor; }

size_t ss_outputs_size(const ss_outputs* outputs) { return outputs ? outputs->items.size() : 0; }

size_t ss_outputs_delete_count(const ss_outputs* outputs, size_t index) {
  if (!outputs || index >= outputs->items.size()) return 0;
  return outputs->items[index].delete_count;
}

size_t ss_outputs_token_count(const ss_outputs* outputs, size_t index) {
  if (!outputs || index >= outputs->items.size()) return 0;
  return outputs->items[index].append_tokens.size();
}

const char* ss_outputs_token(const ss_outputs* outputs, size_t index, size_t token) {
  if (!outputs || index >= outputs->items.size()) return nullptr;
  const auto& tokens = outputs->items[index].append_tokens;
  return token < tokens.size() ? tokens[token].c_str() : nullptr;
}

void ss_outputs_destroy(ss_outputs* outputs) { delete outputs; }

}  // extern "C"
