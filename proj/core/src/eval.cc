// Copyright 2026 The Truecase Authors.
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

#include "truecase/eval.h"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "truecase/error.h"
#include "truecase/unicode.h"

namespace truecase {
namespace {

double Ratio(std::size_t a, std::size_t b) {
  return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
}

std::uint64_t Mix(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return (h ^ 0x20) * 0x100000001b3ULL;
}

}  // namespace

bool IsNonLowercase(const std::string& token) { return Lowercase(token) != token; }

EvalReport EvalNl(const std::vector<Sentence>& predictions,
                  const std::vector<Sentence>& references) {
  if (predictions.size() != references.size()) {
    throw Error(ErrorCode::kAlignmentMismatch,
                std::to_string(predictions.size()) + " prediction lines vs " +
                    std::to_string(references.size()) + " reference lines");
  }
  EvalReport r;
  r.sentences = references.size();
  for (std::size_t s = 0; s < references.size(); ++s) {
    const Sentence& pred = predictions[s];
    const Sentence& ref = references[s];
    if (pred.size() != ref.size()) {
      throw Error(ErrorCode::kAlignmentMismatch,
                  "line " + std::to_string(s + 1) + ": " +
                      std::to_string(pred.size()) + " vs " +
                      std::to_string(ref.size()) + " tokens");
    }
    for (std::size_t i = 0; i < ref.size(); ++i) {
      const bool same = pred[i] == ref[i];
      const bool nl_pred = IsNonLowercase(pred[i]);
      const bool nl_ref = IsNonLowercase(ref[i]);
      ++r.tokens;
      r.correct_tokens += same;
      r.nl_predictions += nl_pred;
      r.nl_references += nl_ref;
      r.nl_correct += nl_pred && same;
      if (Lowercase(pred[i]) != Lowercase(ref[i])) ++r.hard_errors;
      auto& cls = r.by_class[static_cast<int>(ClassifyWord(ref[i]))];
      ++cls.tokens;
      cls.correct += same;
    }
  }
  r.precision = Ratio(r.nl_correct, r.nl_predictions);
  r.recall = Ratio(r.nl_correct, r.nl_references);
  r.f1 = r.precision > 0 && r.recall > 0
             ? 2 * r.precision * r.recall / (r.precision + r.recall)
             : 0.0;
  r.token_accuracy = Ratio(r.correct_tokens, r.tokens);
  return r;
}

nlohmann::json EvalReport::ToJson() const {
  nlohmann::json classes = nlohmann::json::object();
  for (int c = 0; c < 4; ++c) {
    classes[WordClassName(static_cast<WordClass>(c))] = {
        {"tokens", by_class[c].tokens},
        {"correct", by_class[c].correct},
        {"accuracy", Ratio(by_class[c].correct, by_class[c].tokens)}};
  }
  return {{"sentences", sentences},
          {"tokens", tokens},
          {"token_accuracy", token_accuracy},
          {"nl_predictions", nl_predictions},
          {"nl_references", nl_references},
          {"nl_correct", nl_correct},
          {"hard_errors", hard_errors},
          {"precision", precision},
          {"recall", recall},
          {"f1", f1},
          {"by_class", classes}};
}

BenchReport BenchSpeed(const std::vector<BenchSystem>& systems,
                       const std::vector<Sentence>& corpus,
                       const std::string& reference,
                       const BenchOptions& options) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "empty benchmark corpus");
  BenchReport report;
  report.reference = reference;
  report.sentences = corpus.size();
  for (const auto& s : corpus) report.tokens += s.size();
  report.warmup_runs = options.warmup_runs;
  report.measured_runs = options.measured_runs;
  using Clock = std::chrono::steady_clock;
  // Runs are interleaved across systems so that slow drift in machine load
  // affects every system alike.
  std::vector<std::uint64_t> first_digest(systems.size(), 0);
  for (const auto& system : systems) {
    BenchEntry entry;
    entry.name = system.name;
    entry.parameters = system.parameters;
    entry.float_bytes = system.float_bytes;
    entry.quantized_bytes = system.quantized_bytes;
    report.entries.push_back(std::move(entry));
  }
  for (int run = 0; run < options.warmup_runs + options.measured_runs; ++run) {
    for (std::size_t k = 0; k < systems.size(); ++k) {
      std::uint64_t digest = 0xcbf29ce484222325ULL;
      const auto start = Clock::now();
      for (const auto& s : corpus) {
        const Sentence out = systems[k].run(s);
        for (const auto& t : out.tokens()) digest = Mix(digest, t);
      }
      const double secs = std::chrono::duration<double>(Clock::now() - start).count();
      if (run == 0) {
        first_digest[k] = digest;
      } else if (digest != first_digest[k]) {
        throw Error(ErrorCode::kFormat, systems[k].name + " output changed between runs");
      }
      if (run >= options.warmup_runs) report.entries[k].run_seconds.push_back(secs);
    }
  }
  for (auto& entry : report.entries) {
    std::vector<double> sorted = entry.run_seconds;
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted.size() % 2 == 1
                              ? sorted[sorted.size() / 2]
                              : 0.5 * (sorted[sorted.size() / 2 - 1] +
                                       sorted[sorted.size() / 2]);
    entry.tokens_per_second = static_cast<double>(report.tokens) / median;
  }
  const BenchEntry& ref = report.Find(reference);
  const double base = ref.tokens_per_second;
  for (auto& e : report.entries) e.relative_speed = e.tokens_per_second / base;
  return report;
}

const BenchEntry& BenchReport::Find(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return e;
  }
  throw Error(ErrorCode::kConfig, "no benchmark entry named '" + name + "'");
}

nlohmann::json BenchReport::ToJson() const {
  nlohmann::json systems = nlohmann::json::array();
  for (const auto& e : entries) {
    systems.push_back({{"name", e.name},
                       {"tokens_per_second", e.tokens_per_second},
                       {"relative_speed", e.relative_speed},
                       {"run_seconds", e.run_seconds},
                       {"parameters", e.parameters},
                       {"float_bytes", e.float_bytes},
                       {"quantized_bytes", e.quantized_bytes}});
  }
  return {{"reference", reference},
          {"sentences", sentences},
          {"tokens", tokens},
          {"batch_size", 1},
          {"threads", 1},
          {"warmup_runs", warmup_runs},
          {"measured_runs", measured_runs},
          {"systems", systems}};
}

std::string Table2Header() {
  return "system\tprecision\trecall\tf1\tspeed\tparams";
}

std::string Table2Row(const std::string& system, const EvalReport& eval,
                      const BenchEntry* bench) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%s\t%.2f\t%.2f\t%.2f\t", system.c_str(),
                100 * eval.precision, 100 * eval.recall, 100 * eval.f1);
  std::string row = buf;
  if (bench != nullptr) {
    std::snprintf(buf, sizeof(buf), "%.2fx\t%zu", bench->relative_speed,
                  bench->parameters);
    row += buf;
  } else {
    row += "-\t-";
  }
  return row;
}

}  // namespace truecase
