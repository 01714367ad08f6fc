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

// Hyper-parameters of the hierarchical model and the two named presets.

#ifndef TRUECASE_MODEL_CONFIG_H_
#define TRUECASE_MODEL_CONFIG_H_

#include <string>

#include <nlohmann/json.hpp>

#include "truecase/features.h"

namespace truecase {

struct ModelConfig {
  std::string preset = "student";
  int input_embedding_size = 128;
  int output_embedding_size = 128;
  int forward_encoder_layers = 1;
  int backward_encoder_layers = 1;
  int decoder_layers = 1;
  int encoder_cells = 128;
  int decoder_cells = 128;
  int max_ngram_order = 3;
  int num_buckets = 5000;
  int beam_size = 2;
  bool dedupe_ngrams = false;
  // Longer sentences are decoded in chunks of this many words.
  int max_sentence_words = 200;

  static ModelConfig Teacher();
  static ModelConfig Student();
  // "teacher" or "student". Throws Error(kConfig).
  static ModelConfig Preset(const std::string& name);

  FeatureConfig features() const;

  // Throws Error(kConfig). Encoder cells are split evenly between the two
  // directions, so they must be even and both directions equally deep.
  void Validate() const;

  nlohmann::json ToJson() const;
  // Missing keys keep the values already in `base`. Unknown keys throw.
  static ModelConfig FromJson(const nlohmann::json& j, const ModelConfig& base);
  static ModelConfig FromJson(const nlohmann::json& j) {
    return FromJson(j, ModelConfig());
  }

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

}  // namespace truecase

#endif  // TRUECASE_MODEL_CONFIG_H_
