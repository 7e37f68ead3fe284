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

// Acceptance checks: one PASS/FAIL line per criterion; exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iterator>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "clients/direct_runner.hpp"
#include "clients/wav_client.hpp"
#include "clients/websocket_client.hpp"
#include "evaluation/bleu.hpp"
#include "evaluation/evaluate.hpp"
#include "evaluation/metrics.hpp"
#include "evaluation/mwer.hpp"
#include "evaluation/timed_text.hpp"
#include "helpers/oracles.hpp"
#include "helpers/test_support.hpp"
#include "processors/scripted.hpp"
#include "processors/sliding_window.hpp"
#include "processors/streamatt.hpp"
#include "processors/vad.hpp"
#include "protocol/metric_log.hpp"
#include "server/session_driver.hpp"

using namespace simulstream;
using namespace std::chrono_literals;
using evaluation::LatencyMode;
using evaluation::ReferenceSegment;
using protocol::IncrementalOutput;
using protocol::MetricLogRecord;
using simulstream::testing::EntrySpec;
using simulstream::testing::ScriptJson;
using simulstream::testing::TempDir;
using Tokens = std::vector<std::string>;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void Report(const std::string& name, const std::function<Outcome()>& check) {
  Outcome outcome;
  try {
    outcome = check();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  if (!outcome.pass) ++failures;
  std::cout << (outcome.pass ? "PASS " : "FAIL ") << name << ": " << outcome.detail << std::endl;
}

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fmt(const char* format, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), format, value);
  return buffer;
}

// Runs a processor over `audio` through the session driver, like the server does.
std::vector<MetricLogRecord> Drive(processors::SpeechProcessor& processor,
                                   const std::vector<float>& audio, const std::string& id) {
  processor.ClearState();
  server::SessionDriver driver(processor, id, nullptr, nullptr);
  driver.Feed(audio);
  driver.Finish();
  return driver.records();
}

protocol::ParsedLog ThroughLogFile(const std::vector<MetricLogRecord>& records) {
  std::stringstream buffer;
  for (const auto& r : records) protocol::WriteLogRecord(r, buffer);
  return protocol::ParseLog(buffer);
}

std::vector<MetricLogRecord> WithoutTiming(std::vector<MetricLogRecord> records) {
  for (auto& r : records) r.computation_s = 0.0;
  return records;
}

/// Records what the wrapped generator proposed at each step.
class RecordingGenerator final : public processors::Generator {
 public:
  explicit RecordingGenerator(std::shared_ptr<processors::Generator> inner)
      : inner_(std::move(inner)) {}
  processors::GeneratorOutput Generate(const processors::GeneratorRequest& request) override {
    last = inner_->Generate(request);
    return last;
  }
  bool ProvidesAttention() const override { return inner_->ProvidesAttention(); }

  processors::GeneratorOutput last;

 private:
  std::shared_ptr<processors::Generator> inner_;
};

std::vector<EntrySpec> RandomAlignedEntries(std::mt19937& rng, double length_s, int* counter) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<EntrySpec> entries;
  double t = 0.2 * unit(rng);
  while (true) {
    const double duration = 0.2 + 1.3 * unit(rng);
    if (t + duration > length_s) break;
    EntrySpec e{t, t + duration, {}, {}};
    const int n = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < n; ++k) {
      e.tokens.push_back(" t" + std::to_string((*counter)++));
      e.align.push_back(t + duration * unit(rng));
    }
    std::sort(e.align.begin(), e.align.end());
    entries.push_back(e);
    t += duration + 0.5 * unit(rng);
  }
  return entries;
}

// ---------------------------------------------------------------------------

Outcome MwerOptimality() {
  std::mt19937 rng(2026);
  const auto start = Clock::now();
  std::size_t mismatches = 0;
  const int instances = 500;
  for (int trial = 0; trial < instances; ++trial) {
    Tokens hyp(rng() % 13);
    for (auto& w : hyp) w = std::string(1, static_cast<char>('a' + rng() % 5));
    std::vector<Tokens> refs(1 + rng() % 4);
    for (auto& r : refs) {
      r.resize(rng() % 6);
      for (auto& w : r) w = std::string(1, static_cast<char>('a' + rng() % 5));
    }
    const auto alignment = evaluation::MwerAlign(hyp, refs);
    if (alignment.cost != testing::BruteForceSegmentationCost(hyp, refs)) ++mismatches;
  }
  const double elapsed = Seconds(start);
  return {mismatches == 0 && elapsed < 5.0,
          std::to_string(instances) + " instances, " + std::to_string(mismatches) +
              " cost mismatches vs exhaustive search, " + Fmt("%.3f s", elapsed) + " (limit 5 s)"};
}

Outcome BleuOracle() {
  std::ifstream in(std::string(SIMULSTREAM_TEST_DATA) + "/bleu_oracle.json");
  const auto oracle = nlohmann::json::parse(in);
  double worst = 0.0;
  std::size_t corpora = 0;
  for (const auto& c : oracle["corpora"]) {
    const auto score = evaluation::CorpusBleu(c["hyps"].get<Tokens>(), c["refs"].get<Tokens>());
    worst = std::max(worst, std::abs(score.score - c["bleu"].get<double>()));
    ++corpora;
  }
  const Tokens corpus = {"the committee approved the budget on Monday .",
                         "It will take effect in 2027, officials said."};
  const double identity = evaluation::CorpusBleu(corpus, corpus).score;
  const double disjoint =
      evaluation::CorpusBleu({"zebra quantum lattice", "orange vortex"}, corpus).score;
  const bool pass = corpora >= 20 && worst <= 0.01 && std::abs(identity - 100.0) <= 1e-9 &&
                    disjoint == 0.0;
  return {pass, std::to_string(corpora) + " corpora vs " + oracle["generator"].get<std::string>() +
                    ", max |diff| " + Fmt("%.2e", worst) + " (tol 0.01), identity " +
                    Fmt("%.6f", identity) + ", disjoint " + Fmt("%.6f", disjoint)};
}

// Resegments with the library aligner, then scores each span straight from the formula.
double OracleStreamLaal(const std::vector<evaluation::TimedWord>& words,
                        const std::vector<ReferenceSegment>& refs, bool computation_aware) {
  Tokens hyp;
  for (const auto& w : words) hyp.push_back(w.word);
  std::vector<Tokens> ref_words;
  for (const auto& r : refs) {
    std::istringstream in(r.text);
    ref_words.emplace_back(std::istream_iterator<std::string>(in), std::istream_iterator<std::string>());
  }
  const auto spans = evaluation::SplitAt(words, evaluation::MwerAlign(hyp, ref_words).boundaries);
  double sum = 0.0;
  int scored = 0;
  for (std::size_t k = 0; k < spans.size(); ++k) {
    if (spans[k].empty()) continue;
    std::vector<double> times;
    for (const auto& w : spans[k]) times.push_back(computation_aware ? w.ca_time_s : w.ideal_time_s);
    sum += testing::LaalFormula(times, ref_words[k].size(), refs[k].start_s, refs[k].duration_s);
    ++scored;
  }
  return sum / scored;
}

Outcome StreamLaalFixtures() {
  auto words = [](const std::vector<double>& times) {
    std::vector<evaluation::TimedWord> out;
    for (std::size_t i = 0; i < times.size(); ++i) {
      out.push_back({"w" + std::to_string(i), times[i], times[i]});
    }
    return out;
  };
  const double two_word =
      evaluation::StreamLaal(words({1.0, 2.0}), {{"w0 w1", 0.0, 2.0}}, LatencyMode::kIdeal)
          .latency_s;
  const double paced = evaluation::StreamLaal(words({0.0, 0.5, 1.0, 1.5}),
                                              {{"w0 w1 w2 w3", 0.0, 2.0}}, LatencyMode::kIdeal)
                           .latency_s;

  std::mt19937 rng(404);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Tokens vocab = {"the", "a", "cat", "dog", "sat", "ran", "home", "now"};
  int sessions = 0;
  int violations = 0;
  int reproduced = 0;
  double worst = 0.0;
  while (sessions < 1000) {
    std::vector<MetricLogRecord> records;
    std::size_t display = 0;
    double audio = 0.0;
    const int steps = 1 + static_cast<int>(rng() % 12);
    for (int s = 1; s <= steps; ++s) {
      audio += 0.5 * unit(rng);
      MetricLogRecord r{"fuzz", s, audio, 0.6 * unit(rng), 0, {}};
      r.delete_count = display ? rng() % (display + 1) / 2 : 0;
      const std::size_t n = rng() % 4;
      for (std::size_t k = 0; k < n; ++k) r.append_tokens.push_back(" " + vocab[rng() % vocab.size()]);
      display = display - r.delete_count + n;
      records.push_back(r);
    }
    std::vector<ReferenceSegment> refs;
    double t = 0.0;
    const int segments = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < segments; ++k) {
      std::string text;
      for (std::size_t w = 0; w < 1 + rng() % 5; ++w) text += (w ? " " : "") + vocab[rng() % vocab.size()];
      const double duration = 0.3 + 2.0 * unit(rng);
      refs.push_back({text, t, duration});
      t += duration + 0.3 * unit(rng);
    }
    const auto text = evaluation::ReconstructTimedText(records);
    if (text.words.empty()) continue;
    const double ideal = evaluation::StreamLaal(text.words, refs, LatencyMode::kIdeal).latency_s;
    const double ca =
        evaluation::StreamLaal(text.words, refs, LatencyMode::kComputationAware).latency_s;
    if (ca < ideal - 1e-9) {
      ++violations;
      worst = std::max(worst, ideal - ca);
      if (std::abs(OracleStreamLaal(text.words, refs, false) - ideal) <= 1e-9 &&
          std::abs(OracleStreamLaal(text.words, refs, true) - ca) <= 1e-9) {
        ++reproduced;
      }
    }
    ++sessions;
  }
  const bool pass = std::abs(two_word - 1.0) <= 1e-9 && std::abs(paced) <= 1e-9 && violations == 0;
  return {pass, "two-word fixture " + Fmt("%.9f s", two_word) + ", paced fixture " +
                    Fmt("%.9f s", paced) + ", CA < ideal in " + std::to_string(violations) +
                    " of " + std::to_string(sessions) + " fuzzed sessions" +
                    (violations ? Fmt(" (worst gap %.3e s, ", worst) + std::to_string(reproduced) +
                                      " reproduced by the direct formula)"
                                : "")};
}

Outcome NormalizedErasure() {
  std::mt19937 rng(77);
  int counter = 0;
  std::size_t nonzero = 0;
  std::size_t sessions = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double length = 4.0 + (rng() % 9);
    const auto entries = RandomAlignedEntries(rng, length, &counter);
    if (entries.empty()) continue;
    auto gen = std::make_shared<processors::ScriptedGenerator>(
        processors::Script::FromJson(ScriptJson(entries)), 0.08);
    processors::StreamAttProcessor p(
        {static_cast<int>(rng() % 9), 1.0, 1 + rng() % 10, true}, gen);
    p.Load();
    const auto log = ThroughLogFile(Drive(p, testing::Silence(length), "s"));
    std::string text;
    for (const auto& e : entries) {
      for (const auto& t : e.tokens) text += t;
    }
    const auto report = evaluation::Evaluate(log, {{"s", {{text, 0.0, length}}}});
    if (!report.audios[0].normalized_erasure || *report.audios[0].normalized_erasure != 0.0) {
      ++nonzero;
    }
    ++sessions;
  }

  processors::Script steps = processors::Script::FromJson(
      ScriptJson({}, {{0, {"a", " b", " c", " d", " e"}},
                      {3, {" f", " g", " h"}},
                      {2, {" i", " j", " k", " l", " m", " n", " o"}}}));
  processors::ScriptedProcessor retranslation(steps, {});
  const auto log = ThroughLogFile(Drive(retranslation, testing::Silence(3.0), "r"));
  const auto report = evaluation::Evaluate(log, {{"r", {{"a b f i j k l m n o", 0.0, 3.0}}}});
  const auto& r = report.audios[0];
  const bool pass = nonzero == 0 && sessions > 0 && r.deleted_tokens == 5 && r.final_tokens == 10 &&
                    r.normalized_erasure && *r.normalized_erasure == 0.5;
  return {pass, std::to_string(sessions) + " AlignAtt sessions, " + std::to_string(nonzero) +
                    " with NE != 0; retranslation session " + std::to_string(r.deleted_tokens) +
                    " deleted / " + std::to_string(r.final_tokens) + " final -> NE " +
                    Fmt("%.17g", r.normalized_erasure.value_or(-1.0))};
}

Outcome RealTimeFactor() {
  std::vector<MetricLogRecord> fast;
  for (int s = 1; s <= 5; ++s) {
    fast.push_back({"fast", s, 2.0 * s, s < 5 ? 0.5 : 0.0, 0, {s == 1 ? "ok" : ""}});
  }
  fast[1].append_tokens.clear();
  for (int s = 2; s <= 5; ++s) fast[s - 1].append_tokens.clear();
  std::vector<MetricLogRecord> slow = {{"slow", 1, 5.0, 6.0, 0, {"late"}},
                                       {"slow", 2, 10.0, 6.0, 0, {}}};
  const evaluation::ReferenceSet refs = {{"fast", {{"ok", 0.0, 10.0}}},
                                         {"slow", {{"late", 0.0, 10.0}}}};
  std::vector<MetricLogRecord> all = fast;
  all.insert(all.end(), slow.begin(), slow.end());
  const auto report = evaluation::Evaluate(ThroughLogFile(all), refs);
  const auto& f = report.audios[0];
  const auto& s = report.audios[1];
  const std::string table = evaluation::ReportToTable(report);
  const bool pass = f.rtf && *f.rtf == 0.2 && !f.slower_than_realtime && s.rtf && *s.rtf == 1.2 &&
                    s.slower_than_realtime &&
                    table.find("slower than real time") != std::string::npos;
  return {pass, "2 s compute over 10 s audio -> RTF " + Fmt("%.10g", f.rtf.value_or(-1.0)) +
                    "; 12 s over 10 s -> RTF " + Fmt("%.3g", s.rtf.value_or(-1.0)) +
                    (s.slower_than_realtime ? " flagged" : " NOT flagged")};
}

Outcome SlidingWindowDedup() {
  std::mt19937 rng(8128);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t deletions = 0;
  std::size_t repeats = 0;
  std::size_t incomplete = 0;
  for (int stream = 0; stream < 1000; ++stream) {
    const double window = 8.0 + 2.0 * (rng() % 4);
    const double length = 10.0 + 20.0 * unit(rng);
    std::vector<EntrySpec> entries;
    Tokens expected;
    int counter = 0;
    double t = 0.5 * unit(rng);
    while (true) {
      const double duration = 0.2 + 1.3 * unit(rng);
      if (t + duration > length) break;
      EntrySpec e{t, t + duration, {}, {}};
      for (std::size_t k = 0; k < 1 + rng() % 3; ++k) {
        e.tokens.push_back("t" + std::to_string(counter++));
        expected.push_back(e.tokens.back());
      }
      entries.push_back(e);
      t += duration + 0.5 * unit(rng);
    }
    auto gen = std::make_shared<processors::ScriptedGenerator>(
        processors::Script::FromJson(ScriptJson(entries)));
    processors::SlidingWindowProcessor p({window, 2.0}, gen);
    const auto records = Drive(p, testing::Silence(length), "w");
    Tokens display;
    for (const auto& r : records) {
      deletions += r.delete_count;
      protocol::ApplyOutput(display, r.output());
    }
    repeats += display.size() - std::set<std::string>(display.begin(), display.end()).size();
    if (display != expected) ++incomplete;
  }

  // Adversarial generators: arbitrary hypotheses every stride.
  std::size_t committed_deleted = 0;
  for (int stream = 0; stream < 1000; ++stream) {
    std::vector<Tokens> outputs(16);
    for (auto& o : outputs) {
      o.resize(rng() % 7);
      for (auto& tok : o) tok = std::string(1, static_cast<char>('a' + rng() % 4));
    }
    auto gen = std::make_shared<testing::QueueGenerator>(outputs);
    const double stride = 1.0 + (rng() % 2);
    processors::SlidingWindowProcessor p({stride * (1 + rng() % 4), stride}, gen);
    Tokens display;
    for (int k = 0; k <= 16; ++k) {
      const std::size_t committed = p.committed_count();
      const Tokens prefix(display.begin(), display.begin() + static_cast<std::ptrdiff_t>(committed));
      protocol::AudioChunk chunk;
      chunk.samples.assign(protocol::SecondsToSamples(stride), 0.0f);
      const auto outs = k < 16 ? p.ProcessChunk(chunk) : p.Finalize();
      for (const auto& o : outs) {
        if (o.delete_count > display.size() - committed) ++committed_deleted;
        protocol::ApplyOutput(display, o);
      }
      if (display.size() < committed ||
          !std::equal(prefix.begin(), prefix.end(), display.begin())) {
        ++committed_deleted;
      }
    }
  }
  const bool pass = deletions == 0 && repeats == 0 && incomplete == 0 && committed_deleted == 0;
  return {pass, "1000 consistent streams: " + std::to_string(deletions) + " deletions, " +
                    std::to_string(repeats) + " repeated tokens, " + std::to_string(incomplete) +
                    " incomplete transcripts; 1000 adversarial streams: " +
                    std::to_string(committed_deleted) + " committed-token deletions"};
}

Outcome AlignAttPolicy() {
  std::mt19937 rng(31337);
  int counter = 0;
  std::size_t emitted = 0;
  std::size_t violations = 0;
  std::size_t not_maximal = 0;
  std::size_t f0_withheld = 0;
  std::size_t fbig_emitted = 0;
  for (int session = 0; session < 300; ++session) {
    const double length = 3.0 + (rng() % 8);
    const auto entries = RandomAlignedEntries(rng, length, &counter);
    auto scripted = std::make_shared<processors::ScriptedGenerator>(
        processors::Script::FromJson(ScriptJson(entries)), 0.08);
    auto recorder = std::make_shared<RecordingGenerator>(scripted);
    const int mode = session % 3;  // 0: random f, 1: f = 0, 2: f >= F
    const int cutoff = mode == 0 ? static_cast<int>(rng() % 9) : mode == 1 ? 0 : 100000;
    processors::StreamAttProcessor p({cutoff, 1.0, 1 + rng() % 12, false}, recorder);
    p.Load();
    const auto audio = testing::Silence(length);
    for (std::size_t begin = 0; begin < audio.size(); begin += 16000) {
      protocol::AudioChunk chunk;
      chunk.samples.assign(audio.begin() + static_cast<std::ptrdiff_t>(begin),
                           audio.begin() + static_cast<std::ptrdiff_t>(std::min(audio.size(), begin + 16000)));
      const auto outs = p.ProcessChunk(chunk);
      const std::size_t k = outs.empty() ? 0 : outs.front().append_tokens.size();
      const auto& proposal = recorder->last;
      if (!proposal.attention) continue;
      const long frames = static_cast<long>(proposal.attention->frames());
      const long limit = frames - 1 - cutoff;
      for (std::size_t i = 0; i < k; ++i) {
        if (static_cast<long>(proposal.attention->ArgmaxFrame(i)) > limit) ++violations;
      }
      if (k < proposal.tokens.size() &&
          static_cast<long>(proposal.attention->ArgmaxFrame(k)) <= limit) {
        ++not_maximal;
      }
      if (mode == 1 && k != proposal.tokens.size()) ++f0_withheld;
      if (mode == 2) fbig_emitted += k;
      emitted += k;
    }
  }
  // Direct rule checks at the boundary values.
  processors::AttentionMatrix att(3, 100);
  att.at(0, 10) = att.at(1, 40) = att.at(2, 95) = 1.0;
  const bool rule = processors::AlignAttEmitCount(att, 100, 20) == 2 &&
                    processors::AlignAttEmitCount(att, 100, 0) == 3 &&
                    processors::AlignAttEmitCount(att, 100, 100) == 0;
  const bool pass = rule && violations == 0 && not_maximal == 0 && f0_withheld == 0 &&
                    fbig_emitted == 0 && emitted > 0;
  return {pass, std::to_string(emitted) + " tokens emitted over 300 sessions, " +
                    std::to_string(violations) + " past the cutoff, " +
                    std::to_string(not_maximal) + " eligible tokens held back, f=0 withheld " +
                    std::to_string(f0_withheld) + ", f>=F emitted " + std::to_string(fbig_emitted) +
                    (rule ? ", F=100 example ok" : ", F=100 example WRONG")};
}

Outcome ServerPool() {
  const auto start = Clock::now();
  TempDir dir;
  testing::WriteText(dir / "script.json", ScriptJson({{0.1, 0.4, {" hi"}, {}}}));
  testing::TestServer server("type: scripted\nscript_path: script.json\n", 2, std::nullopt,
                             dir.path());
  clients::WebSocketClient first(server.url());
  clients::WebSocketClient second(server.url());
  first.SendConfig({"en", "de", "one"});
  second.SendConfig({"en", "de", "two"});
  for (int i = 0; i < 100 && server.server().pool().busy() < 2; ++i) std::this_thread::sleep_for(10ms);
  const bool both_admitted = server.server().pool().busy() == 2;

  clients::WebSocketClient third(server.url());
  std::string reason;
  while (auto message = third.Receive()) {
    if (const auto* err = std::get_if<protocol::ErrorMessage>(&*message)) reason = err->reason;
  }
  const bool refused = reason.find("server busy") != std::string::npos && third.close_code() == 1013;

  // Both held sessions complete normally.
  const auto audio = testing::Silence(0.5);
  bool served = true;
  for (auto* client : {&first, &second}) {
    client->SendAudio(audio);
    client->SendEos();
    Tokens display;
    while (auto message = client->Receive()) {
      if (const auto* out = std::get_if<protocol::OutputMessage>(&*message)) {
        protocol::ApplyOutput(display, out->output);
      } else if (std::holds_alternative<protocol::ErrorMessage>(*message)) {
        served = false;
      }
    }
    served = served && display == Tokens{" hi"};
    if (client == &first) break;  // release one, keep the other
  }
  bool readmitted = false;
  for (int attempt = 0; attempt < 100 && !readmitted; ++attempt) {
    const auto result = clients::RunStreamingSession(server.url(), {"en", "de", "four"}, audio,
                                                     clients::Pace::kMax);
    readmitted = !result.refused && !result.error && result.display == Tokens{" hi"};
    if (!readmitted) std::this_thread::sleep_for(20ms);
  }
  second.SendEos();
  while (second.Receive()) {
  }
  server.Stop();
  const double elapsed = Seconds(start);
  const bool pass = both_admitted && refused && served && readmitted && elapsed < 10.0;
  return {pass, std::string("pool_size=2: two sessions ") + (both_admitted && served ? "served" : "NOT served") +
                    ", third " + (refused ? "refused (\"" + reason + "\", close 1013)" : "NOT refused") +
                    ", after release " + (readmitted ? "admitted" : "NOT admitted") + ", " +
                    Fmt("%.2f s", elapsed) + " (limit 10 s)"};
}

Outcome RunnerServerEquivalence() {
  TempDir dir;
  testing::WriteText(dir / "script.json",
                     ScriptJson({{0.3, 0.8, {"Es", " war"}, {0.5, 0.7}},
                                 {1.0, 2.2, {" einmal"}, {}},
                                 {2.5, 3.4, {" ein", " König"}, {2.8, 3.3}}}));
  const std::vector<std::pair<std::string, std::string>> configs = {
      {"scripted", "type: scripted\nscript_path: script.json\nchunk_s: 0.7\n"},
      {"streamatt", "type: streamatt\ncutoff_frames: 3\nscript_path: script.json\n"},
      {"sliding_window", "type: sliding_window\nwindow_s: 2\nstride_s: 1\nscript_path: script.json\n"},
  };
  testing::WriteWavFile(dir / "a.wav", testing::Tone(3.55));
  testing::WriteWavFile(dir / "b.wav", testing::Concat(testing::Silence(1.0), testing::Tone(2.0)));
  testing::WriteWavFile(dir / "c.wav", testing::Tone(0.05));
  testing::WriteText(dir / "list.txt", "a.wav\nb.wav\nc.wav\n");

  std::size_t compared = 0;
  std::vector<std::string> differing;
  for (const auto& [name, yaml] : configs) {
    testing::WriteText(dir / (name + ".yaml"), yaml);
    const auto direct_log = dir / (name + ".direct.jsonl");
    const auto server_log = dir / (name + ".server.jsonl");
    clients::RunDirect(dir / "list.txt", dir / (name + ".yaml"), direct_log, {"en", "de"});
    {
      testing::TestServer server(yaml, 2, server_log, dir.path());
      clients::StreamOptions options;
      options.source_lang = "en";
      options.target_lang = "de";
      options.pace = clients::Pace::kMax;
      options.concurrency = 2;
      clients::StreamWavFiles(dir / "list.txt", server.url(), options);
      server.Stop();
    }
    const auto direct = protocol::ParseLogFile(direct_log);
    const auto served = protocol::ParseLogFile(server_log);
    bool same = direct.size() == served.size() && direct.size() == 3;
    for (const auto& [id, records] : direct) {
      same = same && served.count(id) && WithoutTiming(records) == WithoutTiming(served.at(id));
      ++compared;
    }
    if (!same) differing.push_back(name);
  }
  std::string detail = std::to_string(compared) + " logs compared over 3 processors";
  for (const auto& name : differing) detail += ", " + name + " differs";
  return {differing.empty() && compared == 9, detail};
}

Outcome VadRemapping() {
  int counter = 0;
  std::mt19937 rng(5);
  std::vector<EntrySpec> entries = RandomAlignedEntries(rng, 2.0, &counter);
  const std::string yaml_inner =
      "type: streamatt\ncutoff_frames: 2\nchunk_s: 0.5\nscript_path: script.json\n";
  TempDir dir;
  testing::WriteText(dir / "script.json", ScriptJson(entries));
  auto plain = processors::ProcessorFactory::FromString(yaml_inner, dir.path()).Create();
  auto vad = processors::ProcessorFactory::FromString(
                 "type: vad\nthreshold: 0.5\nframe_ms: 20\ninner:\n  type: streamatt\n"
                 "  cutoff_frames: 2\n  chunk_s: 0.5\n  script_path: script.json\n",
                 dir.path())
                 .Create();
  const auto speech = testing::Tone(2.0);
  const auto with_silence = testing::Concat(testing::Silence(2.0), speech);
  const auto reference = Drive(*plain, speech, "v");
  const auto filtered = Drive(*vad, with_silence, "v");

  auto outputs = [](const std::vector<MetricLogRecord>& records) {
    std::vector<std::pair<IncrementalOutput, double>> out;
    for (const auto& r : records) {
      if (!r.output().empty()) out.emplace_back(r.output(), r.audio_processed_s);
    }
    return out;
  };
  const auto ref_out = outputs(reference);
  const auto vad_out = outputs(filtered);
  bool same_outputs = ref_out.size() == vad_out.size() && !ref_out.empty();
  bool shifted = same_outputs;
  for (std::size_t i = 0; same_outputs && i < ref_out.size(); ++i) {
    same_outputs = ref_out[i].first == vad_out[i].first;
    shifted = shifted && std::abs(vad_out[i].second - (ref_out[i].second + 2.0)) < 1e-9;
  }
  const double total = filtered.back().audio_processed_s;
  const auto& map = dynamic_cast<processors::VadProcessor&>(*vad).time_map();
  const bool remapped = map.filtered_length() == 32000 && map.ToOriginal(0) == 32000;
  const bool pass = std::abs(total - 4.0) < 1e-9 && same_outputs && shifted && remapped;
  return {pass, "log ends at " + Fmt("%.3f s", total) + " of original audio, " +
                    std::to_string(vad_out.size()) + " output steps " +
                    (same_outputs ? "identical to" : "DIFFERENT from") +
                    " the speech-only run" + (shifted ? ", each 2 s later" : ", positions not shifted") +
                    (remapped ? ", speech maps to 2.0-4.0 s" : ", time map wrong")};
}

}  // namespace

int main() {
  Report("mwer_alignment_optimality", MwerOptimality);
  Report("bleu_oracle_equivalence", BleuOracle);
  Report("stream_laal_fixtures", StreamLaalFixtures);
  Report("normalized_erasure", NormalizedErasure);
  Report("real_time_factor", RealTimeFactor);
  Report("sliding_window_dedup", SlidingWindowDedup);
  Report("alignatt_policy", AlignAttPolicy);
  Report("server_pool_semantics", ServerPool);
  Report("runner_server_equivalence", RunnerServerEquivalence);
  Report("vad_time_remapping", VadRemapping);
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed")
            << std::endl;
  return failures ? 1 : 0;
}
