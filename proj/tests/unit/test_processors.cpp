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

#include <chrono>
#include <random>
#include <set>

#include "doctest.h"
#include "helpers/test_support.hpp"
#include "processors/bridge.hpp"
#include "processors/factory.hpp"
#include "processors/lcs.hpp"
#include "processors/scripted.hpp"
#include "processors/sliding_window.hpp"
#include "processors/streamatt.hpp"
#include "processors/vad.hpp"

using namespace simulstream;
using namespace simulstream::processors;
using simulstream::testing::EntrySpec;
using simulstream::testing::QueueGenerator;
using simulstream::testing::Replay;
using simulstream::testing::ScriptJson;
using Tokens = std::vector<std::string>;

namespace {

AudioChunk Chunk(double seconds, double offset_s = 0.0, float value = 0.0f) {
  AudioChunk chunk;
  chunk.samples.assign(protocol::SecondsToSamples(seconds), value);
  chunk.stream_offset_s = offset_s;
  return chunk;
}

IncrementalOutput Single(const std::vector<IncrementalOutput>& outputs) {
  REQUIRE(outputs.size() == 1);
  return outputs.front();
}

/// Inner processor that records what it receives and emits nothing.
class RecordingProcessor final : public SpeechProcessor {
 public:
  explicit RecordingProcessor(double chunk_s) : chunk_s_(chunk_s) {}
  void SetLanguages(const std::string&, const std::string&) override {}
  void ClearState() override { chunks->clear(); }
  double PreferredChunkSeconds() const override { return chunk_s_; }
  std::vector<IncrementalOutput> ProcessChunk(const AudioChunk& chunk) override {
    chunks->push_back(chunk);
    return {};
  }
  std::vector<IncrementalOutput> Finalize() override { return {}; }

  std::shared_ptr<std::vector<AudioChunk>> chunks = std::make_shared<std::vector<AudioChunk>>();

 private:
  double chunk_s_;
};

std::size_t TotalSamples(const std::vector<AudioChunk>& chunks) {
  std::size_t total = 0;
  for (const auto& c : chunks) total += c.samples.size();
  return total;
}

AttentionMatrix PeakAttention(const std::vector<std::size_t>& peaks, std::size_t frames) {
  AttentionMatrix attention(peaks.size(), frames);
  for (std::size_t i = 0; i < peaks.size(); ++i) attention.at(i, peaks[i]) = 1.0;
  return attention;
}

}  // namespace

TEST_SUITE("processors") {
  TEST_CASE("lcs pairs for the retranslation example") {
    const auto pairs = LongestCommonSubsequence({"the", "cat", "sat"},
                                                {"cat", "sat", "on", "the", "mat"});
    using Pair = std::pair<std::size_t, std::size_t>;
    CHECK(pairs == std::vector<Pair>{{1, 0}, {2, 1}});
    CHECK(LongestCommonSubsequence({}, {"a"}).empty());
    CHECK(LongestCommonSubsequence({"a", "b"}, {"c", "d"}).empty());
    // The last pair sits as far right in `previous` as possible.
    CHECK(LongestCommonSubsequence({"a", "b", "a"}, {"a"}) == std::vector<Pair>{{2, 0}});
  }

  TEST_CASE("lcs length matches the dynamic-programming optimum on random inputs") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
      Tokens a(rng() % 9), b(rng() % 9);
      for (auto& t : a) t = std::string(1, static_cast<char>('a' + rng() % 3));
      for (auto& t : b) t = std::string(1, static_cast<char>('a' + rng() % 3));
      std::vector<std::vector<std::size_t>> dp(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
      for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
          dp[i][j] = a[i - 1] == b[j - 1] ? dp[i - 1][j - 1] + 1
                                          : std::max(dp[i - 1][j], dp[i][j - 1]);
        }
      }
      const auto pairs = LongestCommonSubsequence(a, b);
      REQUIRE(pairs.size() == dp[a.size()][b.size()]);
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        REQUIRE(a[pairs[k].first] == b[pairs[k].second]);
        if (k > 0) {
          REQUIRE(pairs[k].first > pairs[k - 1].first);
          REQUIRE(pairs[k].second > pairs[k - 1].second);
        }
      }
    }
  }

  TEST_CASE("sliding window: first window appends the hypothesis") {
    auto gen = std::make_shared<QueueGenerator>(std::vector<Tokens>{{"hello"}});
    SlidingWindowProcessor p({8.0, 2.0}, gen);
    CHECK(p.ProcessChunk(Chunk(1.0)).empty());  // below one stride: no generation
    CHECK(Single(p.ProcessChunk(Chunk(1.0, 1.0))) == IncrementalOutput{0, {"hello"}});
  }

  TEST_CASE("sliding window: overlapping hypotheses are deduplicated") {
    auto gen = std::make_shared<QueueGenerator>(
        std::vector<Tokens>{{"the", "cat", "sat"}, {"cat", "sat", "on", "the", "mat"}});
    SlidingWindowProcessor p({8.0, 2.0}, gen);
    CHECK(Single(p.ProcessChunk(Chunk(2.0))) == IncrementalOutput{0, {"the", "cat", "sat"}});
    CHECK(Single(p.ProcessChunk(Chunk(2.0, 2.0))) == IncrementalOutput{0, {"on", "the", "mat"}});
    CHECK(p.display() == Tokens{"the", "cat", "sat", "on", "the", "mat"});
  }

  TEST_CASE("sliding window: empty lcs replaces the revisable tail") {
    auto gen = std::make_shared<QueueGenerator>(std::vector<Tokens>{{"a", "b"}, {"c", "d"}});
    SlidingWindowProcessor p({8.0, 2.0}, gen);
    p.ProcessChunk(Chunk(2.0));
    CHECK(Single(p.ProcessChunk(Chunk(2.0, 2.0))) == IncrementalOutput{2, {"c", "d"}});
  }

  TEST_CASE("sliding window: finalize generates on pending audio and commits everything") {
    auto gen = std::make_shared<QueueGenerator>(std::vector<Tokens>{{"x"}, {"x", "y"}});
    SlidingWindowProcessor p({8.0, 2.0}, gen);
    p.ProcessChunk(Chunk(2.0));
    p.ProcessChunk(Chunk(0.5, 2.0));
    CHECK(Single(p.Finalize()) == IncrementalOutput{0, {"y"}});
    CHECK(p.committed_count() == 2);
    CHECK(gen->requests.size() == 2);

    auto idle = std::make_shared<QueueGenerator>(std::vector<Tokens>{{"x"}});
    SlidingWindowProcessor q({8.0, 2.0}, idle);
    q.ProcessChunk(Chunk(2.0));
    CHECK(q.Finalize().empty());
    CHECK(idle->requests.size() == 1);
  }

  TEST_CASE("sliding window: tokens of audio that left the window are committed") {
    // 4 s window, 2 s stride: the third generation drops the first 2 s.
    auto gen = std::make_shared<QueueGenerator>(
        std::vector<Tokens>{{"a", "b"}, {"a", "b", "c", "d"}, {"e", "f"}});
    SlidingWindowProcessor p({4.0, 2.0}, gen);
    p.ProcessChunk(Chunk(2.0));
    p.ProcessChunk(Chunk(2.0, 2.0));
    CHECK(p.committed_count() == 0);
    // Half of the previous hypothesis ({a, b}) belongs to the dropped half.
    CHECK(Single(p.ProcessChunk(Chunk(2.0, 4.0))) == IncrementalOutput{2, {"e", "f"}});
    CHECK(p.committed_count() == 2);
    CHECK(p.display() == Tokens{"a", "b", "e", "f"});
  }

  TEST_CASE("sliding window: adversarial generators never delete committed tokens") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Tokens> outputs;
      for (int k = 0; k < 12; ++k) {
        Tokens t(rng() % 6);
        for (auto& tok : t) tok = std::string(1, static_cast<char>('a' + rng() % 4));
        outputs.push_back(t);
      }
      auto gen = std::make_shared<QueueGenerator>(outputs);
      SlidingWindowProcessor p({4.0, 2.0}, gen);
      Tokens display;
      for (int k = 0; k <= 12; ++k) {
        const Tokens committed(display.begin(),
                               display.begin() + static_cast<std::ptrdiff_t>(p.committed_count()));
        const auto outs = k < 12 ? p.ProcessChunk(Chunk(2.0, 2.0 * k)) : p.Finalize();
        display = Replay(outs, display);
        REQUIRE(display.size() >= committed.size());
        REQUIRE(Tokens(display.begin(),
                       display.begin() + static_cast<std::ptrdiff_t>(committed.size())) ==
                committed);
        REQUIRE(display == p.display());
      }
    }
  }

  TEST_CASE("clear_state makes repeated streams identical") {
    Script script = Script::FromJson(ScriptJson({{0.1, 0.9, {" a"}, {}},
                                                 {1.2, 2.5, {" b", "c"}, {}},
                                                 {2.6, 3.9, {" d"}, {}}}));
    auto gen = std::make_shared<ScriptedGenerator>(script);
    SlidingWindowProcessor sw({2.0, 1.0}, gen);
    StreamAttProcessor sa({1, 0.5, 2, true}, gen);
    for (SpeechProcessor* p : {static_cast<SpeechProcessor*>(&sw),
                               static_cast<SpeechProcessor*>(&sa)}) {
      std::vector<std::vector<IncrementalOutput>> runs;
      for (int run = 0; run < 2; ++run) {
        p->ClearState();
        std::vector<IncrementalOutput> all;
        const double chunk = p->PreferredChunkSeconds();
        for (int k = 0; k * chunk < 4.0; ++k) {
          auto outs = p->ProcessChunk(Chunk(chunk, k * chunk));
          all.insert(all.end(), outs.begin(), outs.end());
        }
        auto tail = p->Finalize();
        all.insert(all.end(), tail.begin(), tail.end());
        runs.push_back(all);
      }
      CHECK(!runs[0].empty());
      CHECK(runs[0] == runs[1]);
    }
  }

  TEST_CASE("alignatt emission rule") {
    const auto att = PeakAttention({10, 40, 95}, 100);
    CHECK(AlignAttEmitCount(att, 100, 20) == 2);
    CHECK(AlignAttEmitCount(att, 100, 0) == 3);
    CHECK(AlignAttEmitCount(att, 100, 100) == 0);
    CHECK(AlignAttEmitCount(att, 100, 250) == 0);
    // Emission stops at the first violation even if later tokens would pass.
    CHECK(AlignAttEmitCount(PeakAttention({10, 99, 5}, 100), 100, 20) == 1);
  }

  TEST_CASE("word starts") {
    CHECK(WordStarts({" a", "b", " c"}) == std::vector<std::size_t>{0, 2});
    CHECK(WordStarts({"a ", "b", "c"}) == std::vector<std::size_t>{0, 1});
    CHECK(WordStarts({}).empty());
  }

  TEST_CASE("streamatt requires attention") {
    StreamAttProcessor p({}, std::make_shared<QueueGenerator>(std::vector<Tokens>{}, false));
    try {
      p.Load();
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kConfig);
    }
  }

  TEST_CASE("streamatt holds back tokens aligned near the end of the audio") {
    Script script = Script::FromJson(ScriptJson({{0.0, 0.5, {" a", " b"}, {0.2, 0.45}},
                                                 {0.6, 1.95, {" c"}, {1.9}}}));
    auto gen = std::make_shared<ScriptedGenerator>(script, 0.08);
    StreamAttProcessor p({2, 1.0, 40, true}, gen);
    p.Load();
    // F = 13 frames, limit 10: " a" (frame 2) and " b" (frame 5) pass.
    CHECK(Single(p.ProcessChunk(Chunk(1.0))) == IncrementalOutput{0, {" a", " b"}});
    // F = 25, limit 22: " c" peaks at frame 23.
    CHECK(p.ProcessChunk(Chunk(1.0, 1.0)).empty());
    CHECK(Single(p.Finalize()) == IncrementalOutput{0, {" c"}});

    StreamAttProcessor held({2, 1.0, 40, false}, gen);
    held.ProcessChunk(Chunk(1.0));
    held.ProcessChunk(Chunk(1.0, 1.0));
    CHECK(held.Finalize().empty());
  }

  TEST_CASE("streamatt history pruning") {
    std::vector<EntrySpec> entries;
    for (int w = 0; w < 5; ++w) {
      entries.push_back({0.1 * w, 0.1 * w + 0.05, {" w" + std::to_string(w), "x"},
                         {0.1 * w + 0.04, 0.1 * w + 0.05}});
    }
    auto gen = std::make_shared<ScriptedGenerator>(Script::FromJson(ScriptJson(entries)), 0.08);
    StreamAttProcessor p({0, 1.0, 2, true}, gen);
    const auto out = Single(p.ProcessChunk(Chunk(1.0)));
    CHECK(out.append_tokens.size() == 10);
    // Five words emitted, W = 2: the three oldest are dropped.
    REQUIRE(p.history().size() == 4);
    CHECK(p.history()[0].token == " w3");
    CHECK(p.history()[2].token == " w4");
    // The buffer now starts at the frame " w3" was aligned to (0.34 s -> frame 4).
    CHECK(p.history()[0].aligned_sample == 4 * 1280);
    CHECK(p.buffer_start_sample() == p.history()[0].aligned_sample);
    CHECK(p.buffer_samples() == 16000 - 4 * 1280);

    // Within the limit nothing changes.
    const auto before = p.history().size();
    p.PruneHistory();
    CHECK(p.history().size() == before);
  }

  TEST_CASE("streamatt keeps emitting after the buffer is cut") {
    std::vector<EntrySpec> entries;
    for (int w = 0; w < 20; ++w) entries.push_back({0.5 * w, 0.5 * w + 0.4, {" t" + std::to_string(w)}, {}});
    auto gen = std::make_shared<ScriptedGenerator>(Script::FromJson(ScriptJson(entries)), 0.08);
    StreamAttProcessor p({2, 1.0, 3, true}, gen);
    std::vector<IncrementalOutput> all;
    for (int k = 0; k < 10; ++k) {
      auto outs = p.ProcessChunk(Chunk(1.0, k));
      all.insert(all.end(), outs.begin(), outs.end());
    }
    auto tail = p.Finalize();
    all.insert(all.end(), tail.begin(), tail.end());
    Tokens expected;
    for (int w = 0; w < 20; ++w) expected.push_back(" t" + std::to_string(w));
    CHECK(Replay(all) == expected);
    for (const auto& o : all) CHECK(o.delete_count == 0);
    CHECK(p.buffer_start_sample() > 0);
  }

  TEST_CASE("scripted generator windows") {
    Script script = Script::FromJson(ScriptJson({{0.0, 1.0, {" a", " b"}, {}},
                                                 {1.5, 2.0, {" c"}, {}}}));
    ScriptedGenerator gen(script, 0.08);
    const auto audio = testing::Silence(1.0);
    GeneratorRequest request;
    request.audio = audio;
    request.window_start_s = 3.0;
    CHECK(gen.Generate(request).tokens.empty());

    const auto two = testing::Silence(2.0);
    request.audio = two;
    request.window_start_s = 0.0;
    const auto out = gen.Generate(request);
    CHECK(out.tokens == Tokens{" a", " b", " c"});
    REQUIRE(out.attention);
    CHECK_NOTHROW(out.attention->Validate());
    CHECK(out.attention->frames() == 25);
    CHECK(out.attention->ArgmaxFrame(2) == 24);

    request.forced_prefix = out.tokens;
    CHECK(gen.Generate(request).tokens.empty());
    request.forced_prefix = {" b"};
    CHECK(gen.Generate(request).tokens == Tokens{" c"});
  }

  TEST_CASE("forced prefix stripping") {
    CHECK(StripForcedPrefix({"a", "b", "c"}, {}) == Tokens{"a", "b", "c"});
    CHECK(StripForcedPrefix({"a", "b", "c"}, {"x", "a", "b"}) == Tokens{"c"});
    CHECK(StripForcedPrefix({"b", "c"}, {"a", "b"}) == Tokens{"c"});
    CHECK(StripForcedPrefix({"a", "b"}, {"q"}) == Tokens{"a", "b"});
  }

  TEST_CASE("attention validation") {
    AttentionMatrix ok = PeakAttention({0, 1}, 3);
    CHECK_NOTHROW(ok.Validate());
    AttentionMatrix bad(1, 2);
    bad.at(0, 0) = 0.7;
    CHECK_THROWS_AS(bad.Validate(), Error);
    bad.at(0, 1) = 0.3;
    CHECK_NOTHROW(bad.Validate());
    bad.at(0, 1) = -0.3;
    bad.at(0, 0) = 1.3;
    CHECK_THROWS_AS(bad.Validate(), Error);
  }

  TEST_CASE("scripted processor modes") {
    Script timed = Script::FromJson(ScriptJson({{0.0, 0.8, {" a"}, {}}, {0.9, 2.5, {" b"}, {}}}));
    ScriptedProcessor p(timed, {1.0, {"en", "de"}, std::nullopt});
    CHECK_NOTHROW(p.SetLanguages("en", "de"));
    try {
      p.SetLanguages("en", "xx");
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kUnsupportedLanguage);
      CHECK(std::string(e.what()).find("xx") != std::string::npos);
    }
    CHECK(Single(p.ProcessChunk(Chunk(1.0))) == IncrementalOutput{0, {" a"}});
    CHECK(p.ProcessChunk(Chunk(1.0, 1.0)).empty());
    CHECK(p.Finalize().empty());  // " b" ends after the stream

    Script steps = Script::FromJson(ScriptJson({}, {{0, {"a", "b"}}, {1, {"c"}}}));
    ScriptedProcessor replay(steps, {});
    CHECK(Single(replay.ProcessChunk(Chunk(1.0))) == IncrementalOutput{0, {"a", "b"}});
    CHECK(Single(replay.ProcessChunk(Chunk(1.0, 1.0))) == IncrementalOutput{1, {"c"}});
    CHECK(replay.ProcessChunk(Chunk(1.0, 2.0)).empty());

    ScriptedProcessor failing(timed, {1.0, {}, 2});
    CHECK_NOTHROW(failing.ProcessChunk(Chunk(1.0)));
    CHECK_THROWS_AS(failing.ProcessChunk(Chunk(1.0, 1.0)), Error);
  }

  TEST_CASE("vad drops silence") {
    auto inner = std::make_unique<RecordingProcessor>(1.0);
    auto chunks = inner->chunks;
    VadProcessor vad({0.3, 30.0, 5, 0.0}, std::move(inner));
    CHECK(vad.ProcessChunk(Chunk(3.0)).empty());
    CHECK(vad.Finalize().empty());
    CHECK(chunks->empty());
    CHECK(vad.forwarded_samples() == 0);
  }

  TEST_CASE("vad forwards a full-scale noise burst entirely") {
    auto inner = std::make_unique<RecordingProcessor>(0.5);
    auto chunks = inner->chunks;
    VadProcessor vad({0.9, 30.0, 0, 0.0}, std::move(inner));
    std::mt19937 rng(1);
    std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
    AudioChunk noise = Chunk(1.0);
    for (float& s : noise.samples) s = dist(rng);
    vad.ProcessChunk(noise);
    vad.Finalize();
    CHECK(TotalSamples(*chunks) == 16000);
    CHECK(vad.forwarded_samples() == 16000);
    // Full-size chunks first, then the flushed remainder.
    CHECK((*chunks)[0].samples.size() == 8000);
  }

  TEST_CASE("vad maps filtered time back to the original stream") {
    auto inner = std::make_unique<RecordingProcessor>(1.0);
    auto chunks = inner->chunks;
    VadProcessor vad({0.5, 20.0, 0, 0.0}, std::move(inner));
    AudioChunk audio;
    audio.samples = testing::Concat(testing::Silence(2.0), testing::Tone(2.0));
    vad.ProcessChunk(audio);
    vad.Finalize();
    CHECK(vad.forwarded_samples() == 32000);
    CHECK(vad.time_map().filtered_length() == 32000);
    CHECK(vad.time_map().ToOriginal(0) == 32000);
    CHECK(vad.time_map().ToOriginal(32000) == 64000);
    CHECK(vad.time_map().ToOriginalSeconds(1.0) == doctest::Approx(3.0));
    REQUIRE(chunks->size() == 2);
    CHECK((*chunks)[1].stream_offset_s == doctest::Approx(1.0));
  }

  TEST_CASE("vad frame classification does not depend on chunking") {
    std::vector<float> audio = testing::Concat(testing::Silence(0.37), testing::Tone(0.81));
    audio = testing::Concat(audio, testing::Silence(0.5));
    std::size_t reference = 0;
    for (std::size_t pieces : {1u, 7u, 13u}) {
      auto inner = std::make_unique<RecordingProcessor>(0.25);
      auto chunks = inner->chunks;
      VadProcessor vad({0.5, 30.0, 3, 0.0}, std::move(inner));
      const std::size_t step = audio.size() / pieces + 1;
      for (std::size_t begin = 0; begin < audio.size(); begin += step) {
        AudioChunk c;
        c.samples.assign(audio.begin() + static_cast<std::ptrdiff_t>(begin),
                         audio.begin() + static_cast<std::ptrdiff_t>(std::min(audio.size(), begin + step)));
        vad.ProcessChunk(c);
      }
      vad.Finalize();
      if (pieces == 1) reference = TotalSamples(*chunks);
      CHECK(TotalSamples(*chunks) == reference);
    }
    CHECK(reference > protocol::SecondsToSamples(0.81));
  }

  TEST_CASE("time map merges contiguous spans and stays monotone") {
    TimeMap map;
    map.Append(100, 50);
    map.Append(150, 10);
    map.Append(300, 20);
    CHECK(map.filtered_length() == 80);
    CHECK(map.ToOriginal(0) == 100);
    CHECK(map.ToOriginal(59) == 159);
    CHECK(map.ToOriginal(60) == 300);
    CHECK(map.ToOriginal(80) == 320);
    std::size_t last = 0;
    for (std::size_t f = 0; f <= 80; ++f) {
      CHECK(map.ToOriginal(f) >= last);
      last = map.ToOriginal(f);
    }
  }

  TEST_CASE("base64 round trip") {
    std::mt19937 rng(9);
    for (std::size_t n = 0; n < 40; ++n) {
      std::vector<std::uint8_t> bytes(n);
      for (auto& b : bytes) b = static_cast<std::uint8_t>(rng());
      REQUIRE(Base64Decode(Base64Encode(bytes)) == bytes);
    }
    CHECK(Base64Encode({'f', 'o', 'o'}) == "Zm9v");
  }

  TEST_CASE("bridge preserves audio bit-exactly across the pipe") {
    BridgeGenerator gen({{SIMULSTREAM_ECHO_CHILD, "checksum"}, 10.0, false});
    std::mt19937 rng(4);
    std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
    std::vector<float> audio(12345);
    for (float& s : audio) s = dist(rng);
    GeneratorRequest request;
    request.audio = audio;
    const auto out = gen.Generate(request);

    std::uint64_t hash = 1469598103934665603ull;
    for (std::uint8_t b : protocol::EncodeAudioFrame(audio)) {
      hash ^= b;
      hash *= 1099511628211ull;
    }
    char expected[17];
    std::snprintf(expected, sizeof(expected), "%016llx", static_cast<unsigned long long>(hash));
    REQUIRE(out.tokens.size() == 2);
    CHECK(out.tokens[0] == std::string(" ") + expected);
    CHECK(out.tokens[1] == " 12345");
    CHECK(out.frame_duration_s == 0.08);
  }

  TEST_CASE("bridge processor appends what the child returns") {
    auto gen = std::make_shared<BridgeGenerator>(
        BridgeConfig{{std::string(SIMULSTREAM_ECHO_CHILD) + " fixed Hello ' world'"}, 10.0, false});
    BridgeProcessor p({1.0, 0.0}, gen);
    CHECK(Single(p.ProcessChunk(Chunk(1.0))) == IncrementalOutput{0, {"Hello", " world"}});
    CHECK(p.ProcessChunk(Chunk(1.0, 1.0)).empty());
    p.ClearState();
    CHECK(Single(p.ProcessChunk(Chunk(1.0))) == IncrementalOutput{0, {"Hello", " world"}});
  }

  TEST_CASE("bridge failures") {
    auto expect = [](const char* mode, ErrorCode code, const std::string& fragment,
                     double timeout_s = 10.0) {
      CAPTURE(mode);
      BridgeGenerator gen({{SIMULSTREAM_ECHO_CHILD, mode}, timeout_s, false});
      const auto audio = testing::Silence(0.1);
      GeneratorRequest request;
      request.audio = audio;
      try {
        gen.Generate(request);
        FAIL("expected an error");
      } catch (const Error& e) {
        CHECK(e.code() == code);
        CHECK(std::string(e.what()).find(fragment) != std::string::npos);
      }
    };
    expect("malformed", ErrorCode::kProtocol, "this is not json");
    expect("error", ErrorCode::kProcessor, "model exploded");
    expect("exit", ErrorCode::kProcessor, "");
    const auto start = std::chrono::steady_clock::now();
    expect("silent", ErrorCode::kProcessor, "", 0.3);
    CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(5));
  }

  TEST_CASE("bridge response decoding") {
    const auto out = DecodeBridgeResponse(
        R"({"tokens":["a","b"],"attention":[[0.5,0.5],[0,1]],"frame_duration_s":0.04})");
    CHECK(out.tokens == Tokens{"a", "b"});
    REQUIRE(out.attention);
    CHECK(out.attention->ArgmaxFrame(1) == 1);
    for (const char* line : {"[1]", R"({"tokens":"a"})",
                             R"({"tokens":["a"],"attention":[[0.5,0.4]],"frame_duration_s":0.1})",
                             R"({"tokens":["a"],"attention":[[1],[0]],"frame_duration_s":0.1})"}) {
      CAPTURE(line);
      try {
        DecodeBridgeResponse(line);
        FAIL("expected an error");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kProtocol);
        CHECK(std::string(e.what()).find(line) != std::string::npos);
      }
    }
  }

  TEST_CASE("factory builds every processor type") {
    testing::TempDir dir;
    testing::WriteText(dir / "script.json", ScriptJson({{0.0, 0.5, {" hi"}, {}}}));
    const std::vector<std::string> configs = {
        "type: scripted\nscript_path: script.json\nchunk_s: 0.5\n",
        "type: sliding_window\nwindow_s: 4\nstride_s: 1\nscript_path: script.json\n",
        "type: streamatt\ncutoff_frames: 1\ngenerator:\n  type: scripted\n  script_path: "
        "script.json\n  frame_duration_s: 0.04\n",
        "type: vad\nthreshold: 0.4\ninner:\n  type: scripted\n  script_path: script.json\n",
        std::string("type: bridge\ncommand: [\"") + SIMULSTREAM_ECHO_CHILD + "\", \"fixed\", \" hi\"]\n",
    };
    for (const auto& yaml : configs) {
      CAPTURE(yaml);
      auto processor = ProcessorFactory::FromString(yaml, dir.path()).Create();
      processor->SetLanguages("en", "de");
      processor->ClearState();
      std::vector<IncrementalOutput> all;
      const double chunk = processor->PreferredChunkSeconds();
      AudioChunk audio;
      audio.samples = testing::Tone(chunk);
      auto outs = processor->ProcessChunk(audio);
      all.insert(all.end(), outs.begin(), outs.end());
      outs = processor->Finalize();
      all.insert(all.end(), outs.begin(), outs.end());
      CHECK(Replay(all) == Tokens{" hi"});
    }
  }

  TEST_CASE("factory rejects invalid configurations") {
    testing::TempDir dir;
    testing::WriteText(dir / "script.json", ScriptJson({}));
    for (const char* yaml : {"type: nonsense\n", "type: vad\n", "type: scripted\n",
                             "type: scripted\nscript_path: missing.json\n",
                             "type: sliding_window\nwindow_s: 1\nstride_s: 2\nscript_path: script.json\n",
                             "type: streamatt\ncommand: [\"true\"]\n",
                             "type: scripted\nscript_path: script.json\nchunk_s: abc\n",
                             "[1, 2"}) {
      CAPTURE(yaml);
      try {
        ProcessorFactory::FromString(yaml, dir.path());
        FAIL("expected an error");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::kConfig);
      }
    }
  }
}
