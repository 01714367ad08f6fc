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

// Two-level truecaser. A word-level tagger decides for every lowercase word
// whether it is copied (SELF) or re-cased (OTHER); a character-level
// transducer assigns U/L to each character of the OTHER words.
//
//   log P(Y | X) = sum_i [c_i = OTHER] log P(y_i | X) + log P(C | X)
//
// Both levels are bidirectional GRU encoders feeding a left-to-right GRU
// decoder that also reads an embedding of the previous label. Words are
// sums of hashed character n-gram embeddings; characters use the unigram
// rows of the same table. The character decoder for word i additionally
// reads tanh(P ctx_i + p), where ctx_i stacks every word-encoder layer's
// state at i. Character decoding of one word never sees another word's
// characters.

#ifndef TRUECASE_HIER_MODEL_H_
#define TRUECASE_HIER_MODEL_H_

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "truecase/beam.h"
#include "truecase/model_config.h"
#include "truecase/nn.h"
#include "truecase/serialization.h"
#include "truecase/text.h"
#include "truecase/unicode.h"

namespace truecase {

enum class DecodeMode { kBestPath, kFullBeam };

// Throws Error(kConfig) for anything but "best-path" / "full-beam".
DecodeMode ParseDecodeMode(std::string_view name);
const char* DecodeModeName(DecodeMode mode);

struct TruecaseResult {
  Sentence output;
  // Log-probability of the output: the path score in best-path mode, the
  // beam marginal in full-beam mode.
  double score = 0;
};

template <typename T>
class HierModel {
 public:
  static constexpr int kStartLabel = 2;

  // Parameters start at zero. Throws Error(kConfig).
  explicit HierModel(const ModelConfig& config);
  HierModel(HierModel&&) = default;
  HierModel& operator=(HierModel&&) = default;

  // Uniform(-range, range) in declaration order.
  void InitUniform(std::uint64_t seed, double range = 0.08);

  // Precomputes weight-only products used on every sentence. Loaded models
  // are frozen; weights must not change until params() is called again.
  void Freeze();

  const ModelConfig& config() const { return config_; }
  // Non-const access drops the cache built by Freeze.
  ParameterStore<T>& params() {
    frozen_.reset();
    return store_;
  }
  const ParameterStore<T>& params() const { return store_; }
  std::size_t ParameterCount() const { return store_.ParameterCount(); }

  // Free-form provenance stored in the file header (seed, corpus, ...).
  nlohmann::json& metadata() { return metadata_; }
  const nlohmann::json& metadata() const { return metadata_; }

  // Per-sentence work shared by the word and character levels.
  struct Encoding {
    std::vector<Matrix<T>> layers;  // word-encoder output per layer
    Matrix<T> word_proj;            // decoder layer-0 input projection
    Matrix<T> word_label_proj;      // label part of it, one column per label
    Matrix<T> char_label_proj;
  };
  // Throws Error(kEmptySentence).
  Encoding Encode(const Sentence& lower) const;

  // Stacked word-encoder states at word i.
  Vector<T> WordContext(const Encoding& enc, std::size_t i) const;

  // log P(c_k | c_<k, X) for k = prefix.size().
  std::array<T, 2> WordTagLogProbs(const Sentence& lower,
                                   const std::vector<WordLabel>& prefix) const;
  // log P(y_i^j | y_i^<j, X) for j = prefix.size(); {0, -inf} on caseless
  // characters. Throws Error(kIndexOutOfRange).
  std::array<T, 2> CharTransduceLogProbs(
      const Sentence& lower, std::size_t word,
      const std::vector<CharLabel>& prefix) const;
  // Same, from an explicit word context (see WordContext).
  std::array<T, 2> CharTransduceLogProbs(
      std::string_view lower_word, const Vector<T>& context,
      const std::vector<CharLabel>& prefix) const;

  // log P(C | X) and log P(y_i | X) under teacher forcing.
  double ScoreWordLabels(const Sentence& lower,
                         const std::vector<WordLabel>& labels) const;
  double ScoreCharLabels(const Sentence& lower, std::size_t word,
                         const std::vector<CharLabel>& labels) const;

  // Negative log-likelihood of the pair.
  T SentenceLoss(const LabeledPair& pair) const;
  // Same, and adds its gradient to params().
  T AccumulateGradients(const LabeledPair& pair);

  // beam_size 0 means config().beam_size.
  std::vector<LabelHypothesis> BeamSearchWords(const Sentence& lower,
                                               int beam_size = 0) const;
  std::vector<LabelHypothesis> BeamSearchWords(const Encoding& enc,
                                               int beam_size) const;
  std::vector<LabelHypothesis> BeamSearchChars(const Sentence& lower,
                                               std::size_t word,
                                               int beam_size = 0) const;
  std::vector<LabelHypothesis> BeamSearchChars(const Encoding& enc,
                                               std::string_view lower_word,
                                               std::size_t word,
                                               int beam_size) const;

  // Output always lowercases back to the input. Sentences longer than
  // config().max_sentence_words are decoded in independent chunks.
  TruecaseResult TruecaseScored(const Sentence& lower, DecodeMode mode,
                                int beam_size = 0) const;
  Sentence Truecase(const Sentence& lower,
                    DecodeMode mode = DecodeMode::kBestPath,
                    int beam_size = 0) const {
    return TruecaseScored(lower, mode, beam_size).output;
  }

  ModelFile ToModelFile(DType dtype = DType::kF32) const;
  void Save(const std::string& path, DType dtype = DType::kF32) const;
  // Throws Error(kFormat) when the header or tensor shapes do not match.
  static HierModel FromModelFile(const ModelFile& file);
  static HierModel Load(const std::string& path);

 private:
  Matrix<T> WordInputs(const Sentence& lower,
                       std::vector<std::vector<int>>* buckets) const;
  Matrix<T> CharInputs(const std::vector<CodePoint>& chars,
                       std::vector<int>* buckets) const;
  // Decoder layer-0 projection for every character of a word.
  Matrix<T> CharProjection(const std::vector<CodePoint>& chars,
                           const Vector<T>& context) const;
  T Loss(const LabeledPair& pair, bool backward) const;
  TruecaseResult DecodeChunk(const Sentence& lower, DecodeMode mode,
                             int beam_size) const;

  struct LabelProjections {
    Matrix<T> word;
    Matrix<T> chars;
  };
  LabelProjections ComputeLabelProjections() const;

  ModelConfig config_;
  ParameterStore<T> store_;
  std::shared_ptr<const LabelProjections> frozen_;
  nlohmann::json metadata_ = nlohmann::json::object();

  Parameter<T>* embedding_ = nullptr;  // input_embedding x num_buckets
  BiEncoder<T> word_encoder_;
  Parameter<T>* word_label_embedding_ = nullptr;  // output_embedding x 3
  GruStack<T> word_decoder_;
  Linear<T> word_output_;
  BiEncoder<T> char_encoder_;
  Linear<T> context_projection_;
  Parameter<T>* char_label_embedding_ = nullptr;
  GruStack<T> char_decoder_;
  Linear<T> char_output_;
};

// Characters with a distinct one-scalar uppercase form; the rest are forced
// to L.
inline bool IsCasedPosition(CodePoint cp) { return ToUpper(cp) != cp; }

}  // namespace truecase

#endif  // TRUECASE_HIER_MODEL_H_
