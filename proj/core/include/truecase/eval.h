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

// Non-lowercase (NL) precision/recall/F1 and batch-size-1 speed runs.

#ifndef TRUECASE_EVAL_H_
#define TRUECASE_EVAL_H_

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "truecase/text.h"

namespace truecase {

struct ClassCounts {
  std::size_t tokens = 0;   // reference tokens of this class
  std::size_t correct = 0;  // exactly reproduced
};

struct EvalReport {
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  std::size_t correct_tokens = 0;
  std::size_t nl_predictions = 0;
  std::size_t nl_references = 0;
  std::size_t nl_correct = 0;
  // Predicted tokens that are not case variants of the reference.
  std::size_t hard_errors = 0;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double token_accuracy = 0;
  // Indexed by WordClass of the reference token.
  std::array<ClassCounts, 4> by_class{};

  nlohmann::json ToJson() const;
};

// A token is NL when it is not all lowercase. An NL prediction is correct
// when it equals the reference token at the same position. Throws
// Error(kAlignmentMismatch) when line or token counts differ.
EvalReport EvalNl(const std::vector<Sentence>& predictions,
                  const std::vector<Sentence>& references);

bool IsNonLowercase(const std::string& token);

// Anything that maps a lowercase sentence to a cased one.
struct BenchSystem {
  std::string name;
  std::function<Sentence(const Sentence&)> run;
  std::size_t parameters = 0;
  std::size_t float_bytes = 0;
  std::size_t quantized_bytes = 0;
};

struct BenchEntry {
  std::string name;
  double tokens_per_second = 0;
  double relative_speed = 0;
  std::vector<double> run_seconds;
  std::size_t parameters = 0;
  std::size_t float_bytes = 0;
  std::size_t quantized_bytes = 0;
};

struct BenchReport {
  std::string reference;
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  int warmup_runs = 0;
  int measured_runs = 0;
  std::vector<BenchEntry> entries;

  nlohmann::json ToJson() const;
  const BenchEntry& Find(const std::string& name) const;
};

struct BenchOptions {
  int warmup_runs = 1;
  int measured_runs = 5;
};

// Decodes the corpus one sentence at a time on the calling thread. Speed is
// the median over measured runs; relative_speed divides by the entry named
// `reference`. Throws Error(kEmptyCorpus), Error(kConfig) for an unknown
// reference, and Error(kFormat) when a system's output changes between runs.
BenchReport BenchSpeed(const std::vector<BenchSystem>& systems,
                       const std::vector<Sentence>& corpus,
                       const std::string& reference,
                       const BenchOptions& options = {});

// Tab-separated: system, precision, recall, f1, relative speed, params.
std::string Table2Row(const std::string& system, const EvalReport& eval,
                      const BenchEntry* bench);
std::string Table2Header();

}  // namespace truecase

#endif  // TRUECASE_EVAL_H_
