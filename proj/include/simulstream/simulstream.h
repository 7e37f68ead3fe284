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

#ifndef SIMULSTREAM_SIMULSTREAM_H_
#define SIMULSTREAM_SIMULSTREAM_H_

/*
 * C interface to the simulstream library: the streaming server, the WAV
 * streaming client, the direct runner, the offline evaluator and single
 * processors.
 *
 * Every fallible call returns an ss_status. On failure, ss_last_error()
 * returns a message describing the most recent error on the calling thread;
 * the pointer stays valid until the next failing call on that thread.
 * Strings returned through char** out parameters are owned by the caller and
 * released with ss_free_string().
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define SS_API __attribute__((visibility("default")))
#else
#define SS_API
#endif

typedef enum ss_status {
  SS_OK = 0,
  SS_INVALID_ARGUMENT = 1,
  SS_IO = 2,
  SS_CONFIG = 3,
  SS_PROTOCOL = 4,
  SS_PROCESSOR = 5,
  SS_UNSUPPORTED_LANGUAGE = 6,
  SS_STRUCTURE = 7,
  SS_UNDEFINED_RESULT = 8,
  SS_REFUSED = 9,
  SS_INTERNAL = 100
} ss_status;

SS_API const char* ss_last_error(void);
SS_API const char* ss_status_name(ss_status status);
SS_API void ss_free_string(char* text);

/* Server */

typedef struct ss_server ss_server;

/* Builds the processor pool described by the two YAML files. Nothing is
 * bound until ss_server_start. */
SS_API ss_status ss_server_create(const char* server_yaml, const char* processor_yaml,
                                  ss_server** out);
/* Overrides the configured port; 0 picks a free one. Call before start. */
SS_API ss_status ss_server_set_port(ss_server* server, uint16_t port);
SS_API ss_status ss_server_start(ss_server* server);
/* The bound port after a successful start. */
SS_API uint16_t ss_server_port(const ss_server* server);
/* Blocks until ss_server_stop has completed (from another thread). */
SS_API ss_status ss_server_wait(ss_server* server);
SS_API ss_status ss_server_stop(ss_server* server);
SS_API void ss_server_destroy(ss_server* server);

/* Clients */

typedef enum ss_pace { SS_PACE_REALTIME = 0, SS_PACE_MAX = 1 } ss_pace;

typedef struct ss_stream_options {
  const char* source_lang;
  const char* target_lang;
  ss_pace pace;
  const char* out_dir;  /* may be NULL */
  size_t concurrency;   /* 0 is treated as 1 */
  size_t max_retries;   /* retries of a refused session */
  double retry_delay_s;
} ss_stream_options;

/* Fills `options` with defaults: realtime pace, one session at a time, 60
 * retries half a second apart. */
SS_API void ss_stream_options_init(ss_stream_options* options);

/* Streams every WAV in the list file to `url` (ws://host:port). Per-file
 * failures do not stop the run: they are counted in *failed_files and listed
 * in the optional JSON summary. */
SS_API ss_status ss_stream_wav_files(const char* list_path, const char* url,
                                     const ss_stream_options* options, size_t* failed_files,
                                     char** summary_json);

/* Runs every WAV in the list through a processor without a server and appends
 * the metric log to `log_path`. */
SS_API ss_status ss_run_direct(const char* list_path, const char* processor_yaml,
                               const char* log_path, const char* source_lang,
                               const char* target_lang, size_t* failed_files,
                               char** summary_json);

/* Evaluation */

enum {
  SS_LATENCY_IDEAL = 1,
  SS_LATENCY_CA = 2,
  SS_LATENCY_BOTH = SS_LATENCY_IDEAL | SS_LATENCY_CA
};

/* Scores a metric log against references. `export_dir` may be NULL; when set
 * the aligned segments are written there for external scorers. Either report
 * pointer may be NULL. */
SS_API ss_status ss_evaluate(const char* log_path, const char* refs_path, int latency_modes,
                             const char* export_dir, char** report_json, char** report_table);

/* Processors */

typedef struct ss_processor ss_processor;
typedef struct ss_outputs ss_outputs;

/* Builds and loads a processor from a processor YAML file. */
SS_API ss_status ss_processor_create(const char* processor_yaml, ss_processor** out);
SS_API ss_status ss_processor_set_languages(ss_processor* processor, const char* source_lang,
                                            const char* target_lang);
SS_API ss_status ss_processor_clear_state(ss_processor* processor);
SS_API double ss_processor_preferred_chunk_s(const ss_processor* processor);
/* Feeds `count` samples at 16 kHz starting at `stream_offset_s`. */
SS_API ss_status ss_processor_process(ss_processor* processor, const float* samples, size_t count,
                                      double stream_offset_s, ss_outputs** out);
SS_API ss_status ss_processor_finalize(ss_processor* processor, ss_outputs** out);
SS_API void ss_processor_destroy(ss_processor* processor);

/* An ordered list of incremental outputs: each removes delete_count tokens
 * from the end of the display and then appends its tokens. */
SS_API size_t ss_outputs_size(const ss_outputs* outputs);
SS_API size_t ss_outputs_delete_count(const ss_outputs* outputs, size_t index);
SS_API size_t ss_outputs_token_count(const ss_outputs* outputs, size_t index);
SS_API const char* ss_outputs_token(const ss_outputs* outputs, size_t index, size_t token);
SS_API void ss_outputs_destroy(ss_outputs* outputs);

#ifdef __cplusplus
}
#endif

#endif /* SIMULSTREAM_SIMULSTREAM_H_ */
