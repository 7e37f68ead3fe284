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

#include <simulstream/simulstream.h>

#include <csignal>
#include <cstdio>
#include <string>

#include "CLI11.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Streaming speech translation server"};
  std::string server_config;
  std::string processor_config;
  int port = -1;
  app.add_option("--server-config", server_config, "Server YAML (host, port, pool_size, log_path)")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--processor-config", processor_config, "Speech processor YAML")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--port", port, "Override the configured port (0 = any free port)")
      ->check(CLI::Range(0, 65535));
  CLI11_PARSE(app, argc, argv);

  // Block the signals before any thread starts so that only sigwait sees them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  ss_server* server = nullptr;
  ss_status status = ss_server_create(server_config.c_str(), processor_config.c_str(), &server);
  if (status == SS_OK && port >= 0) status = ss_server_set_port(server, static_cast<uint16_t>(port));
  if (status == SS_OK) status = ss_server_start(server);
  if (status != SS_OK) {
    std::fprintf(stderr, "simulstream_server: %s: %s\n", ss_status_name(status), ss_last_error());
    ss_server_destroy(server);
    return 1;
  }
  std::printf("listening on port %u\n", static_cast<unsigned>(ss_server_port(server)));
  std::fflush(stdout);

  int received = 0;
  sigwait(&signals, &received);
  std::fprintf(stderr, "simulstream_server: shutting down\n");
  ss_server_stop(server);
  ss_server_destroy(server);
  return 0;
}
