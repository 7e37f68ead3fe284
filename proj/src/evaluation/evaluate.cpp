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

#include "evaluation/evaluate.hpp"

#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>

#include "common/error.hpp"
#include "evaluation/metrics.hpp"
#include "evaluation/mwer.hpp"
#include "evaluation/timed_text.hpp"

namespace simulstream::evaluation {

namespace {

std::string JoinWords(const std::vector<TimedWord>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w.word;
  }
  return out;
}

template <typename F>
std::optional<double> Defined(F&& compute) {
  try {
    return compute();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUndefinedResult) throw;
    return std::nullopt;
  }
}

class Mean {
 public:
  void Add(const std::optional<double>& value) {
    if (!value) return;
    sum_ += *value;
    ++count_;
  }
  std::optional<double> value() const {
    if (count_ == 0) return std::nullopt;
    return sum_ / static_cast<double>(count_);
  }

 private:
  double sum_ = 0.0;
  std::size_t count_ = 0;
};

nlohmann::json Optional(const std::optional<double>& value) {
  return value ? nlohmann::json(*value) : nlohmann::json(nullptr);
}

std::string Cell(const std::optional<double>& value, const char* format) {
  if (!value) return "n/a";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), format, *value);
  return buffer;
}

}  // namespace

EvaluationReport Evaluate(const protocol::ParsedLog& log, const ReferenceSet& refs,
                          const EvaluateOptions& options) {
  if (log.empty()) Fail(ErrorCode::kInvalidArgument, "log contains no records");
  EvaluationReport report;
  report.options = options;

  std::vector<std::string> all_hyps, all_refs;
  Mean laal, laal_ca, erasure, rtf;
  for (const auto& [audio_id, records] : log) {
    const auto found = refs.find(audio_id);
    if (found == refs.end() || found->second.empty()) {
      Fail(ErrorCode::kInvalidArgument, "no references for audio_id \"" + audio_id + "\"");
    }
    const auto& segments = found->second;

    const TimedText text = ReconstructTimedText(records);
    std::vector<std::vector<std::string>> ref_words;
    for (const auto& seg : segments) ref_words.push_back(seg.words());
    const auto alignment = MwerAlign(text.strings(), ref_words);
    const auto spans = SplitAt(text.words, alignment.boundaries);

    AudioReport audio;
    audio.audio_id = audio_id;
    audio.segments = segments.size();
    std::vector<std::string> hyps, ref_texts;
    for (std::size_t k = 0; k < segments.size(); ++k) {
      if (spans[k].empty()) ++audio.skipped_segments;
      hyps.push_back(JoinWords(spans[k]));
      ref_texts.push_back(segments[k].text);
      report.segments.push_back({audio_id, k, hyps.back(), ref_texts.back()});
    }
    audio.bleu = CorpusBleu(hyps, ref_texts).score;
    if (options.ideal_latency) {
      audio.stream_laal_s = Defined(
          [&] { return StreamLaalOverSpans(spans, segments, LatencyMode::kIdeal).latency_s; });
    }
    if (options.ca_latency) {
      audio.stream_laal_ca_s = Defined([&] {
        return StreamLaalOverSpans(spans, segments, LatencyMode::kComputationAware).latency_s;
      });
    }
    audio.normalized_erasure = Defined([&] { return NormalizedErasure(text.totals); });
    audio.rtf = Defined([&] { return RealTimeFactor(text.totals); });
    audio.slower_than_realtime = audio.rtf && *audio.rtf > 1.0;
    audio.deleted_tokens = text.totals.deleted_tokens;
    audio.final_tokens = text.totals.final_tokens;
    audio.computation_s = text.totals.total_computation_s;
    audio.audio_s = text.totals.total_audio_s;

    laal.Add(audio.stream_laal_s);
    laal_ca.Add(audio.stream_laal_ca_s);
    erasure.Add(audio.normalized_erasure);
    rtf.Add(audio.rtf);
    all_hyps.insert(all_hyps.end(), hyps.begin(), hyps.end());
    all_refs.insert(all_refs.end(), ref_texts.begin(), ref_texts.end());
    report.corpus.segments += audio.segments;
    report.corpus.skipped_segments += audio.skipped_segments;
    report.audios.push_back(std::move(audio));
  }

  CorpusReport& corpus = report.corpus;
  corpus.audios = report.audios.size();
  corpus.bleu = CorpusBleu(all_hyps, all_refs);
  corpus.stream_laal_s = laal.value();
  corpus.stream_laal_ca_s = laal_ca.value();
  corpus.normalized_erasure = erasure.value();
  corpus.rtf = rtf.value();
  corpus.slower_than_realtime = corpus.rtf && *corpus.rtf > 1.0;
  return report;
}

EvaluationReport EvaluateFiles(const std::filesystem::path& log_path,
                               const std::filesystem::path& refs_path,
                               const EvaluateOptions& options) {
  return Evaluate(protocol::ParseLogFile(log_path), LoadReferences(refs_path), options);
}

std::string ReportToJson(const EvaluationReport& report) {
  auto latencies = [&](nlohmann::json& out, const std::optional<double>& ideal,
                       const std::optional<double>& ca) {
    if (report.options.ideal_latency) out["stream_laal_s"] = Optional(ideal);
    if (report.options.ca_latency) out["stream_laal_ca_s"] = Optional(ca);
  };

  nlohmann::json audios = nlohmann::json::array();
  for (const auto& audio : report.audios) {
    nlohmann::json entry = {
        {"audio_id", audio.audio_id},
        {"bleu", audio.bleu},
        {"normalized_erasure", Optional(audio.normalized_erasure)},
        {"rtf", Optional(audio.rtf)},
        {"slower_than_realtime", audio.slower_than_realtime},
        {"segments", audio.segments},
        {"skipped_segments", audio.skipped_segments},
        {"deleted_tokens", audio.deleted_tokens},
        {"final_tokens", audio.final_tokens},
        {"computation_s", audio.computation_s},
        {"audio_s", audio.audio_s},
    };
    latencies(entry, audio.stream_laal_s, audio.stream_laal_ca_s);
    audios.push_back(std::move(entry));
  }

  const CorpusReport& c = report.corpus;
  nlohmann::json corpus = {
      {"bleu", c.bleu.score},
      {"bleu_precisions", c.bleu.precisions},
      {"bleu_brevity_penalty", c.bleu.brevity_penalty},
      {"hyp_length", c.bleu.hyp_length},
      {"ref_length", c.bleu.ref_length},
      {"normalized_erasure", Optional(c.normalized_erasure)},
      {"rtf", Optional(c.rtf)},
      {"slower_than_realtime", c.slower_than_realtime},
      {"audios", c.audios},
      {"segments", c.segments},
      {"skipped_segments", c.skipped_segments},
  };
  latencies(corpus, c.stream_laal_s, c.stream_laal_ca_s);
  return nlohmann::json{{"corpus", corpus}, {"audios", audios}}.dump(2);
}

std::string ReportToTable(const EvaluationReport& report) {
  std::ostringstream out;
  char line[512];
  const bool ideal = report.options.ideal_latency;
  const bool ca = report.options.ca_latency;

  std::snprintf(line, sizeof(line), "%-24s %8s", "audio_id", "BLEU");
  out << line;
  if (ideal) out << "  StreamLAAL";
  if (ca) out << "  StreamLAAL_CA";
  out << "       NE      RTF  segs  skipped\n";

  auto row = [&](const std::string& name, double bleu, const std::optional<double>& laal,
                 const std::optional<double>& laal_ca, const std::optional<double>& ne,
                 const std::optional<double>& rtf, std::size_t segments, std::size_t skipped,
                 bool slow) {
    std::snprintf(line, sizeof(line), "%-24s %8.2f", name.c_str(), bleu);
    out << line;
    if (ideal) {
      std::snprintf(line, sizeof(line), "  %10s", Cell(laal, "%.3f").c_str());
      out << line;
    }
    if (ca) {
      std::snprintf(line, sizeof(line), "  %13s", Cell(laal_ca, "%.3f").c_str());
      out << line;
    }
    std::snprintf(line, sizeof(line), " %8s %8s %5zu %8zu%s\n", Cell(ne, "%.4f").c_str(),
                  Cell(rtf, "%.3f").c_str(), segments, skipped,
                  slow ? "  (slower than real time)" : "");
    out << line;
  };
  for (const auto& a : report.audios) {
    row(a.audio_id, a.bleu, a.stream_laal_s, a.stream_laal_ca_s, a.normalized_erasure, a.rtf,
        a.segments, a.skipped_segments, a.slower_than_realtime);
  }
  const auto& c = report.corpus;
  row("CORPUS", c.bleu.score, c.stream_laal_s, c.stream_laal_ca_s, c.normalized_erasure, c.rtf,
      c.segments, c.skipped_segments, c.slower_than_realtime);
  return out.str();
}

}  // namespace simulstream::evaluation
