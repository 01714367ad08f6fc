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

// Noisification of cased text and a word trigram language model used to
// measure how capitalization noise and its normalization affect
// perplexity.

#ifndef TRUECASE_LM_H_
#define TRUECASE_LM_H_

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "truecase/rng.h"
#include "truecase/text.h"

namespace truecase {

struct NoisifyConfig {
  double corruption_rate = 0.5;
  std::uint64_t seed = 1;
};

// Lowercases each token that contains an uppercase character with
// probability corruption_rate. Other tokens are untouched.
Sentence Noisify(const Sentence& sentence, double rate, Rng* rng);
std::vector<Sentence> Noisify(const std::vector<Sentence>& corpus,
                              const NoisifyConfig& config);

struct NgramLmConfig {
  double k = 0.1;
  // Interpolation weights for trigram, bigram and unigram estimates.
  std::array<double, 3> lambdas = {0.6, 0.3, 0.1};
  int min_count = 2;

  void Validate() const;
  nlohmann::json ToJson() const;
};

// Interpolated add-k trigram model over words. Tokens seen fewer than
// min_count times in training map to <unk>; every sentence ends in </s>.
class NgramLm {
 public:
  static inline const std::string kUnk = "<unk>";
  static inline const std::string kEnd = "</s>";

  // Throws Error(kEmptyCorpus).
  static NgramLm Train(const std::vector<Sentence>& corpus,
                       const NgramLmConfig& config = {});

  // Outcome space: vocabulary words plus <unk> and </s>.
  int vocabulary_size() const { return static_cast<int>(words_.size()); }
  const std::string& word(int id) const { return words_[id]; }
  int Id(const std::string& token) const;

  // P(w | u v); ids from Id(). Use -1 for the sentence-start context.
  double Probability(int u, int v, int w) const;

  struct Perplexity {
    double perplexity = 0;
    double oov_rate = 0;
    std::size_t token_count = 0;  // including </s>
  };
  // Throws Error(kEmptyCorpus).
  Perplexity Evaluate(const std::vector<Sentence>& corpus) const;

 private:
  static std::uint64_t Key(int a, int b, int c = 0);

  NgramLmConfig config_;
  std::vector<std::string> words_;
  std::unordered_map<std::string, int> ids_;
  std::vector<double> unigram_;
  double unigram_total_ = 0;
  std::unordered_map<std::uint64_t, double> bigram_;
  std::unordered_map<std::uint64_t, double> bigram_context_;
  std::unordered_map<std::uint64_t, double> trigram_;
  std::unordered_map<std::uint64_t, double> trigram_context_;
};

// Re-cases a lowercase sentence.
using Normalizer = std::function<Sentence(const Sentence& lower)>;

struct LmExperimentConfig {
  std::vector<double> corruption_rates = {0.5, 0.25};
  // Rate of the corrupted training text handed to the normalizers.
  double normalize_rate = 0.5;
  // Tokens already cased in the corrupted text are kept as they are.
  bool keep_cased_tokens = true;
  std::uint64_t seed = 1;
  NgramLmConfig lm;

  nlohmann::json ToJson() const;
};

struct LmArm {
  std::string name;
  NgramLm::Perplexity result;
};

struct LmExperimentResult {
  std::vector<LmArm> arms;
  std::uint64_t seed = 0;

  const LmArm& Find(const std::string& name) const;
  nlohmann::json ToJson() const;
};

// Arms in order: "corrupt-<pct>" per rate, "normalized-<name>" per
// normalizer, then "oracle". Evaluation always uses the clean eval text.
LmExperimentResult RunLmExperiment(
    const std::vector<Sentence>& train, const std::vector<Sentence>& eval,
    const std::vector<std::pair<std::string, Normalizer>>& normalizers,
    const LmExperimentConfig& config);

// Runs `normalizer` on the lowercased sentence; with keep_cased, tokens
// that are not lowercase in `noisy` win.
Sentence Normalize(const Sentence& noisy, const Normalizer& normalizer,
                   bool keep_cased);

}  // namespace truecase

#endif  // TRUECASE_LM_H_
