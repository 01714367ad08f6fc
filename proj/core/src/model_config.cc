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

#include "truecase/model_config.h"

#include "truecase/error.h"

namespace truecase {

ModelConfig ModelConfig::Teacher() {
  ModelConfig c;
  c.preset = "teacher";
  c.input_embedding_size = 512;
  c.output_embedding_size = 512;
  c.forward_encoder_layers = 2;
  c.backward_encoder_layers = 2;
  c.decoder_layers = 2;
  c.encoder_cells = 512;
  c.decoder_cells = 512;
  return c;
}

ModelConfig ModelConfig::Student() { return ModelConfig(); }

ModelConfig ModelConfig::Preset(const std::string& name) {
  if (name == "teacher") return Teacher();
  if (name == "student") return Student();
  throw Error(ErrorCode::kConfig, "unknown preset '" + name + "'");
}

FeatureConfig ModelConfig::features() const {
  FeatureConfig f;
  f.max_ngram_order = max_ngram_order;
  f.num_buckets = num_buckets;
  f.embedding_dim = input_embedding_size;
  f.dedupe_ngrams = dedupe_ngrams;
  return f;
}

void ModelConfig::Validate() const {
  auto positive = [](int v, const char* name) {
    if (v < 1) throw Error(ErrorCode::kConfig, std::string(name) + " must be >= 1");
  };
  positive(input_embedding_size, "input_embedding_size");
  positive(output_embedding_size, "output_embedding_size");
  positive(forward_encoder_layers, "forward_encoder_layers");
  positive(backward_encoder_layers, "backward_encoder_layers");
  positive(decoder_layers, "decoder_layers");
  positive(encoder_cells, "encoder_cells");
  positive(decoder_cells, "decoder_cells");
  positive(beam_size, "beam_size");
  positive(max_sentence_words, "max_sentence_words");
  if (forward_encoder_layers != backward_encoder_layers) {
    throw Error(ErrorCode::kConfig,
                "forward and backward encoders must have the same depth");
  }
  if (encoder_cells % 2 != 0) {
    throw Error(ErrorCode::kConfig, "encoder_cells must be even");
  }
  features().Validate();
}

nlohmann::json ModelConfig::ToJson() const {
  return {
      {"preset", preset},
      {"input_embedding_size", input_embedding_size},
      {"output_embedding_size", output_embedding_size},
      {"forward_encoder_layers", forward_encoder_layers},
      {"backward_encoder_layers", backward_encoder_layers},
      {"decoder_layers", decoder_layers},
      {"encoder_cells", encoder_cells},
      {"decoder_cells", decoder_cells},
      {"max_ngram_order", max_ngram_order},
      {"num_buckets", num_buckets},
      {"beam_size", beam_size},
      {"dedupe_ngrams", dedupe_ngrams},
      {"max_sentence_words", max_sentence_words},
  };
}

ModelConfig ModelConfig::FromJson(const nlohmann::json& j,
                                  const ModelConfig& base) {
  if (!j.is_object()) throw Error(ErrorCode::kConfig, "model config must be an object");
  ModelConfig c = base;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "preset") {
        c.preset = value.get<std::string>();
      } else if (key == "input_embedding_size") {
        c.input_embedding_size = value.get<int>();
      } else if (key == "output_embedding_size") {
        c.output_embedding_size = value.get<int>();
      } else if (key == "forward_encoder_layers") {
        c.forward_encoder_layers = value.get<int>();
      } else if (key == "backward_encoder_layers") {
        c.backward_encoder_layers = value.get<int>();
      } else if (key == "decoder_layers") {
        c.decoder_layers = value.get<int>();
      } else if (key == "encoder_cells") {
        c.encoder_cells = value.get<int>();
      } else if (key == "decoder_cells") {
        c.decoder_cells = value.get<int>();
      } else if (key == "max_ngram_order") {
        c.max_ngram_order = value.get<int>();
      } else if (key == "num_buckets") {
        c.num_buckets = value.get<int>();
      } else if (key == "beam_size") {
        c.beam_size = value.get<int>();
      } else if (key == "dedupe_ngrams") {
        c.dedupe_ngrams = value.get<bool>();
      } else if (key == "max_sentence_words") {
        c.max_sentence_words = value.get<int>();
      } else {
        throw Error(ErrorCode::kConfig, "unknown model config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfig, e.what());
  }
  c.Validate();
  return c;
}

}  // namespace truecase
