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

// Micro-benchmarks over randomly initialized models. A random hierarchical
// model sends about half its words to the character decoder, where a
// trained one sends few, so BM_HierTruecase is an upper bound; the bench
// subcommand measures trained models.

#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "truecase/baseline.h"
#include "truecase/char_reference.h"
#include "truecase/features.h"
#include "truecase/hier_model.h"
#include "truecase/io.h"
#include "truecase/model_config.h"
#include "truecase/nn.h"
#include "truecase/rng.h"
#include "truecase/text.h"

namespace truecase {
namespace {

const std::vector<Sentence>& Corpus() {
  static const auto* corpus = [] {
    auto* out = new std::vector<Sentence>;
    auto lines = ReadLines(TRUECASE_BENCH_CORPUS);
    for (std::size_t i = 0; i < lines.size() && out->size() < 200; ++i) {
      Sentence s = Sentence::Parse(lines[i]);
      if (!s.empty()) out->push_back(s);
    }
    return out;
  }();
  return *corpus;
}

std::vector<Sentence> LowerCorpus() {
  std::vector<Sentence> out;
  for (const auto& s : Corpus()) out.push_back(s.Lowercased());
  return out;
}

std::int64_t WordCount(const std::vector<Sentence>& corpus) {
  std::int64_t n = 0;
  for (const auto& s : corpus) n += static_cast<std::int64_t>(s.size());
  return n;
}

void BM_GruStep(benchmark::State& state) {
  const int h = static_cast<int>(state.range(0));
  ParameterStore<float> store;
  GruLayer<float> layer(&store, "gru", h, h);
  Rng rng(1);
  store.InitUniform(&rng, 0.08);
  Vector<float> x = Vector<float>::Random(h), s = Vector<float>::Zero(h);
  for (auto _ : state) {
    s = layer.Step(x, s);
    benchmark::DoNotOptimize(s.data());
  }
}
BENCHMARK(BM_GruStep)->Arg(128)->Arg(512);

void BM_NgramBuckets(benchmark::State& state) {
  FeatureConfig config;
  const std::vector<std::string> words = {"the", "internationalization", "mcdonald's",
                                          "iphone", "paris"};
  for (auto _ : state) {
    for (const auto& w : words) benchmark::DoNotOptimize(NgramBuckets(w, config));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(words.size()));
}
BENCHMARK(BM_NgramBuckets);

void BM_HierTruecase(benchmark::State& state) {
  const ModelConfig config =
      state.range(0) == 0 ? ModelConfig::Student() : ModelConfig::Teacher();
  HierModel<float> model(config);
  model.InitUniform(1);
  const auto corpus = LowerCorpus();
  for (auto _ : state) {
    for (const auto& s : corpus) benchmark::DoNotOptimize(model.Truecase(s));
  }
  state.SetItemsProcessed(state.iterations() * WordCount(corpus));
  state.SetLabel(config.preset);
}
BENCHMARK(BM_HierTruecase)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CharTaggerTruecase(benchmark::State& state) {
  CharTagger<float> tagger(CharTaggerConfig::EqualWidth(ModelConfig::Student()));
  tagger.InitUniform(1);
  const auto corpus = LowerCorpus();
  for (auto _ : state) {
    for (const auto& s : corpus) benchmark::DoNotOptimize(tagger.Truecase(s));
  }
  state.SetItemsProcessed(state.iterations() * WordCount(corpus));
}
BENCHMARK(BM_CharTaggerTruecase)->Unit(benchmark::kMillisecond);

void BM_BaselineTruecase(benchmark::State& state) {
  const CaseLexicon lexicon = CaseLexicon::Build(Corpus());
  const auto corpus = LowerCorpus();
  for (auto _ : state) {
    for (const auto& s : corpus) benchmark::DoNotOptimize(BaselineTruecase(lexicon, s));
  }
  state.SetItemsProcessed(state.iterations() * WordCount(corpus));
}
BENCHMARK(BM_BaselineTruecase);

void BM_TrainStep(benchmark::State& state) {
  HierModel<float> model(ModelConfig::Student());
  model.InitUniform(1);
  std::vector<LabeledPair> pairs;
  for (std::size_t i = 0; i < 32 && i < Corpus().size(); ++i) {
    pairs.push_back(PairFromCased(Corpus()[i]));
  }
  for (auto _ : state) {
    model.params().ZeroGrad();
    for (const auto& p : pairs) benchmark::DoNotOptimize(model.AccumulateGradients(p));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pairs.size()));
}
BENCHMARK(BM_TrainStep)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace truecase

BENCHMARK_MAIN();
