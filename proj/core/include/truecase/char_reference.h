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

// Purely character-level comparison system: a bidirectional GRU encoder
// over the characters of the whole sentence (spaces included) and a GRU
// decoder that labels every character U or L given the previous label.
// There is no word-level stage, so every character of every word is
// decoded.

#ifndef TRUECASE_CHAR_REFERENCE_H_
#define TRUECASE_CHAR_REFERENCE_H_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "truecase/beam.h"
#include "truecase/model_config.h"
#include "truecase/nn.h"
#include "truecase/serialization.h"
#include "truecase/text.h"

namespace truecase {

struct CharTaggerConfig {
  int embedding_size = 128;
  int label_embedding_size = 128;
  int encoder_layers = 1;
  int decoder_layers = 1;
  int encoder_cells = 128;
  int decoder_cells = 128;
  int num_buckets = 5000;
  int beam_size = 2;

  // Same widths and depths as a hierarchical model's sub-models.
  static CharTaggerConfig EqualWidth(const ModelConfig& model);
  void Validate() const;
  nlohmann::json ToJson() const;
  static CharTaggerConfig FromJson(const nlohmann::json& j);
};

template <typename T>
class CharTagger {
 public:
  explicit CharTagger(const CharTaggerConfig& config);
  CharTagger(CharTagger&&) = default;
  CharTagger& operator=(CharTagger&&) = default;

  void InitUniform(std::uint64_t seed, double range = 0.08);
  const CharTaggerConfig& config() const { return config_; }
  ParameterStore<T>& params() { return store_; }
  std::size_t ParameterCount() const { return store_.ParameterCount(); }

  T SentenceLoss(const LabeledPair& pair) const;
  T AccumulateGradients(const LabeledPair& pair);

  // Labels for every character of lower.Join(); beam_size 0 means the
  // configured beam.
  std::vector<LabelHypothesis> BeamSearch(const Sentence& lower,
                                          int beam_size = 0) const;
  Sentence Truecase(const Sentence& lower, int beam_size = 0) const;

  ModelFile ToModelFile(DType dtype = DType::kF32) const;
  static CharTagger FromModelFile(const ModelFile& file);

 private:
  Matrix<T> Inputs(const std::vector<CodePoint>& chars, std::vector<int>* buckets) const;
  T Loss(const LabeledPair& pair, bool backward) const;

  CharTaggerConfig config_;
  ParameterStore<T> store_;
  Parameter<T>* embedding_ = nullptr;
  BiEncoder<T> encoder_;
  Parameter<T>* label_embedding_ = nullptr;
  GruStack<T> decoder_;
  Linear<T> output_;
};

struct CharTrainOptions {
  int epochs = 1;
  int batch_size = 32;
  double learning_rate = 1e-3;
  double clip_norm = 5.0;
  std::uint64_t seed = 1;
  double init_range = 0.08;
};

// Plain minibatch Adam over the pairs; no validation split.
void TrainCharTagger(CharTagger<float>* tagger, const std::vector<LabeledPair>& pairs,
                     const CharTrainOptions& options);

}  // namespace truecase

#endif  // TRUECASE_CHAR_REFERENCE_H_
