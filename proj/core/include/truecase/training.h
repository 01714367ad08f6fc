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

// Minibatch training of the hierarchical model, and sequence distillation.

#ifndef TRUECASE_TRAINING_H_
#define TRUECASE_TRAINING_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "truecase/eval.h"
#include "truecase/hier_model.h"
#include "truecase/model_config.h"

namespace truecase {

struct TrainConfig {
  int epochs = 10;
  int batch_size = 32;
  double learning_rate = 1e-3;
  double clip_norm = 5.0;
  std::uint64_t seed = 1;
  // Ignored when a validation corpus is passed explicitly.
  double validation_fraction = 0.1;
  // Stop after this many evaluations without a better validation loss or F1.
  int patience = 5;
  std::string preset = "student";
  double init_range = 0.08;
  double max_rejection_rate = 0.1;
  // Validation F1 decodes at most this many validation sentences.
  int max_validation_decode = 1000;
  // Stop early once an epoch's training loss falls below this (0 = never).
  double target_train_loss = 0;
  // JSON-lines log and best checkpoint; empty disables.
  std::string log_path;
  std::string checkpoint_path;

  // Throws Error(kConfig).
  void Validate() const;
  nlohmann::json ToJson() const;
  // Missing keys keep the values in `base`; unknown keys throw.
  static TrainConfig FromJson(const nlohmann::json& j, const TrainConfig& base);
};

struct EpochLog {
  int epoch = 0;
  double train_loss = 0;
  double valid_loss = 0;
  double valid_f1 = 0;
  double seconds = 0;

  nlohmann::json ToJson() const;
};

struct TrainResult {
  HierModel<float> model;
  std::vector<EpochLog> log;
  int best_epoch = 0;
  bool diverged = false;
  std::size_t train_sentences = 0;
  std::size_t valid_sentences = 0;
  std::size_t rejected = 0;
};

using EpochCallback = std::function<void(const EpochLog&)>;

// Trains from cased lines. The model returned is the epoch with the lowest
// validation loss. A non-finite loss or gradient stops training with
// `diverged` set and the last good checkpoint. Throws Error(kEmptyCorpus)
// and Error(kRejectionRate) when more than max_rejection_rate of the
// non-blank lines are not valid case variants.
TrainResult Train(const TrainConfig& config, const ModelConfig& model_config,
                  const std::vector<std::string>& cased_lines,
                  const std::vector<std::string>* validation_lines = nullptr,
                  const EpochCallback& on_epoch = {});

// Truecases every non-blank line of `lower_lines` with the teacher. The
// result is a cased corpus for Train.
std::vector<std::string> Distill(const HierModel<float>& teacher,
                                 const std::vector<std::string>& lower_lines,
                                 DecodeMode mode, int beam_size = 0);

// Throws Error(kConfig) unless both models hash words identically.
void CheckDistillCompatible(const ModelConfig& teacher, const ModelConfig& student);

// Decodes lowercase(reference) and scores it against the reference.
template <typename T>
EvalReport EvalModel(const HierModel<T>& model,
                     const std::vector<Sentence>& references,
                     DecodeMode mode = DecodeMode::kBestPath, int beam_size = 0);

// Word- and character-label accuracy of best-path decoding against the
// derived labels. Character accuracy covers cased characters of words that
// are OTHER in the reference.
struct LabelAccuracy {
  double word = 0;
  double character = 0;
};
LabelAccuracy MeasureLabelAccuracy(const HierModel<float>& model,
                                   const std::vector<LabeledPair>& pairs);

}  // namespace truecase

#endif  // TRUECASE_TRAINING_H_
