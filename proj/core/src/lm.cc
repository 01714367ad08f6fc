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

#include "truecase/lm.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "truecase/error.h"
#include "truecase/unicode.h"

namespace truecase {
namespace {

bool HasUpper(const std::string& token) {
  for (CodePoint cp : DecodeUtf8(token)) {
    if (IsUpper(cp)) return true;
  }
  return false;
}

std::string ArmName(const char* prefix, double rate) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s-%g", prefix, rate * 100.0);
  return buf;
}

}  // namespace

Sentence Noisify(const Sentence& sentence, double rate, Rng* rng) {
  std::vector<std::string> tokens = sentence.tokens();
  for (auto& t : tokens) {
    if (HasUpper(t) && rng->Uniform() < rate) t = Lowercase(t);
  }
  return Sentence::FromTokens(std::move(tokens));
}

std::vector<Sentence> Noisify(const std::vector<Sentence>& corpus,
                              const NoisifyConfig& config) {
  if (!(config.corruption_rate >= 0 && config.corruption_rate <= 1)) {
    throw Error(ErrorCode::kConfig, "corruption rate must be in [0, 1]");
  }
  Rng rng(config.seed);
  std::vector<Sentence> out;
  out.reserve(corpus.size());
  for (const auto& s : corpus) out.push_back(Noisify(s, config.corruption_rate, &rng));
  return out;
}

void NgramLmConfig::Validate() const {
  if (!(k > 0)) throw Error(ErrorCode::kConfig, "add-k constant must be positive");
  double sum = 0;
  for (double l : lambdas) {
    if (l < 0) throw Error(ErrorCode::kConfig, "interpolation weights must be >= 0");
    sum += l;
  }
  if (std::abs(sum - 1) > 1e-9) {
    throw Error(ErrorCode::kConfig, "interpolation weights must sum to 1");
  }
  if (min_count < 1) throw Error(ErrorCode::kConfig, "min_count must be >= 1");
}

nlohmann::json NgramLmConfig::ToJson() const {
  return {{"order", 3}, {"k", k}, {"lambdas", lambdas}, {"min_count", min_count}};
}

std::uint64_t NgramLm::Key(int a, int b, int c) {
  // Ids shifted by one so the start context (-1) packs as 0.
  return (static_cast<std::uint64_t>(a + 1) << 42) |
         (static_cast<std::uint64_t>(b + 1) << 21) | static_cast<std::uint64_t>(c + 1);
}

NgramLm NgramLm::Train(const std::vector<Sentence>& corpus, const NgramLmConfig& config) {
  config.Validate();
  std::unordered_map<std::string, int> counts;
  std::size_t tokens = 0;
  for (const auto& s : corpus) {
    for (const auto& t : s.tokens()) ++counts[t];
    tokens += s.size();
  }
  if (tokens == 0) throw Error(ErrorCode::kEmptyCorpus, "empty language model corpus");

  NgramLm lm;
  lm.config_ = config;
  std::vector<std::string> vocab;
  for (const auto& [w, c] : counts) {
    if (c >= config.min_count && w != kUnk && w != kEnd) vocab.push_back(w);
  }
  std::sort(vocab.begin(), vocab.end());
  lm.words_ = {kUnk, kEnd};
  lm.words_.insert(lm.words_.end(), vocab.begin(), vocab.end());
  if (lm.words_.size() >= (1u << 21) - 1) {
    throw Error(ErrorCode::kConfig, "vocabulary too large");
  }
  for (int i = 0; i < lm.vocabulary_size(); ++i) lm.ids_[lm.words_[i]] = i;

  lm.unigram_.assign(lm.words_.size(), 0.0);
  for (const auto& s : corpus) {
    if (s.empty()) continue;
    int u = -1, v = -1;
    auto add = [&](int w) {
      lm.unigram_[w] += 1;
      lm.unigram_total_ += 1;
      lm.bigram_[Key(-1, v, w)] += 1;
      lm.bigram_context_[Key(-1, -1, v)] += 1;
      lm.trigram_[Key(u, v, w)] += 1;
      lm.trigram_context_[Key(-1, u, v)] += 1;
      u = v;
      v = w;
    };
    for (const auto& t : s.tokens()) add(lm.Id(t));
    add(1);
  }
  return lm;
}

int NgramLm::Id(const std::string& token) const {
  auto it = ids_.find(token);
  return it == ids_.end() ? 0 : it->second;
}

double NgramLm::Probability(int u, int v, int w) const {
  const double k = config_.k;
  const double kv = k * static_cast<double>(words_.size());
  auto lookup = [](const std::unordered_map<std::uint64_t, double>& m, std::uint64_t key) {
    auto it = m.find(key);
    return it == m.end() ? 0.0 : it->second;
  };
  const double p3 = (lookup(trigram_, Key(u, v, w)) + k) /
                    (lookup(trigram_context_, Key(-1, u, v)) + kv);
  const double p2 = (lookup(bigram_, Key(-1, v, w)) + k) /
                    (lookup(bigram_context_, Key(-1, -1, v)) + kv);
  const double p1 = (unigram_[w] + k) / (unigram_total_ + kv);
  const auto& l = config_.lambdas;
  return l[0] * p3 + l[1] * p2 + l[2] * p1;
}

NgramLm::Perplexity NgramLm::Evaluate(const std::vector<Sentence>& corpus) const {
  double nll = 0;
  std::size_t n = 0, words = 0, oov = 0;
  for (const auto& s : corpus) {
    if (s.empty()) continue;
    int u = -1, v = -1;
    auto score = [&](int w) {
      nll -= std::log(Probability(u, v, w));
      ++n;
      u = v;
      v = w;
    };
    for (const auto& t : s.tokens()) {
      const int w = Id(t);
      ++words;
      if (w == 0) ++oov;
      score(w);
    }
    score(1);
  }
  if (n == 0) throw Error(ErrorCode::kEmptyCorpus, "empty evaluation corpus");
  Perplexity p;
  p.perplexity = std::exp(nll / static_cast<double>(n));
  p.oov_rate = static_cast<double>(oov) / static_cast<double>(words);
  p.token_count = n;
  return p;
}

nlohmann::json LmExperimentConfig::ToJson() const {
  return {{"corruption_rates", corruption_rates},
          {"normalize_rate", normalize_rate},
          {"keep_cased_tokens", keep_cased_tokens},
          {"seed", seed},
          {"lm", lm.ToJson()}};
}

const LmArm& LmExperimentResult::Find(const std::string& name) const {
  for (const auto& a : arms) {
    if (a.name == name) return a;
  }
  throw Error(ErrorCode::kConfig, "no experiment arm " + name);
}

nlohmann::json LmExperimentResult::ToJson() const {
  nlohmann::json table = nlohmann::json::object();
  nlohmann::json order = nlohmann::json::array();
  for (const auto& a : arms) {
    table[a.name] = {{"perplexity", a.result.perplexity},
                     {"oov_rate", a.result.oov_rate},
                     {"token_count", a.result.token_count}};
    order.push_back(a.name);
  }
  return {{"arms", table}, {"order", order}, {"seed", seed}};
}

Sentence Normalize(const Sentence& noisy, const Normalizer& normalizer, bool keep_cased) {
  const Sentence lower = noisy.Lowercased();
  const Sentence cased = normalizer(lower);
  if (cased.size() != noisy.size()) {
    throw Error(ErrorCode::kTokenCountMismatch, "normalizer changed the token count");
  }
  if (!keep_cased) return cased;
  std::vector<std::string> tokens = cased.tokens();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (noisy[i] != lower[i]) tokens[i] = noisy[i];
  }
  return Sentence::FromTokens(std::move(tokens));
}

LmExperimentResult RunLmExperiment(
    const std::vector<Sentence>& train, const std::vector<Sentence>& eval,
    const std::vector<std::pair<std::string, Normalizer>>& normalizers,
    const LmExperimentConfig& config) {
  LmExperimentResult result;
  result.seed = config.seed;
  auto run = [&](std::string name, const std::vector<Sentence>& corpus) {
    result.arms.push_back({std::move(name), NgramLm::Train(corpus, config.lm).Evaluate(eval)});
  };
  for (double rate : config.corruption_rates) {
    run(ArmName("corrupt", rate), Noisify(train, {rate, config.seed}));
  }
  if (!normalizers.empty()) {
    const auto noisy = Noisify(train, {config.normalize_rate, config.seed});
    for (const auto& [name, normalizer] : normalizers) {
      std::vector<Sentence> normalized;
      normalized.reserve(noisy.size());
      for (const auto& s : noisy) {
        normalized.push_back(Normalize(s, normalizer, config.keep_cased_tokens));
      }
      run("normalized-" + name, normalized);
    }
  }
  run("oracle", train);
  return result;
}

}  // namespace truecase
