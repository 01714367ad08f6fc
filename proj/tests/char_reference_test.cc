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

#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "truecase/char_reference.h"
#include "truecase/error.h"
#include "truecase/gradcheck.h"
#include "truecase/rng.h"
#include "truecase/serialization.h"
#include "truecase/unicode.h"

namespace truecase {
namespace {

CharTaggerConfig Small(int dim = 16, int layers = 1) {
  CharTaggerConfig c;
  c.embedding_size = dim;
  c.label_embedding_size = dim;
  c.encoder_cells = dim;
  c.decoder_cells = dim;
  c.encoder_layers = layers;
  c.decoder_layers = layers;
  c.num_buckets = 97;
  return c;
}

LabeledPair P(const char* cased) { return PairFromCased(Sentence::Parse(cased)); }

TEST(CharTaggerTest, EqualWidthFollowsModelConfig) {
  const auto c = CharTaggerConfig::EqualWidth(ModelConfig::Student());
  EXPECT_EQ(c.embedding_size, 128);
  EXPECT_EQ(c.encoder_cells, 128);
  EXPECT_EQ(c.decoder_cells, 128);
  EXPECT_EQ(c.encoder_layers, 1);
  EXPECT_EQ(c.num_buckets, 5000);
}

TEST(CharTaggerTest, GradientCheck) {
  CharTagger<double> m(Small(6, 2));
  m.InitUniform(3, 0.5);
  const LabeledPair pair = P("Hi McX-9 ok");
  const auto r = GradCheck(&m.params(), [&](bool backward) {
    return backward ? m.AccumulateGradients(pair) : m.SentenceLoss(pair);
  });
  EXPECT_LT(r.max_relative_error, 1e-4) << r.worst_parameter;
}

// Exhaustive argmax over all U/L strings of the cased positions.
TEST(CharTaggerTest, WideBeamIsExact) {
  CharTagger<double> m(Small(8));
  m.InitUniform(5, 1.0);
  for (const char* text : {"ab c", "x1y", "hello"}) {
    const Sentence s = Sentence::Parse(text);
    const auto chars = DecodeUtf8(s.Join());
    const int n = static_cast<int>(chars.size());
    double best = -INFINITY;
    std::vector<std::uint8_t> best_labels;
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<std::uint8_t> labels(n);
      bool ok = true;
      for (int j = 0; j < n; ++j) {
        labels[j] = (mask >> j) & 1;
        if (labels[j] && ToUpper(chars[j]) == chars[j]) ok = false;
      }
      if (!ok) continue;
      // Score through the loss: -loss is the log-probability.
      std::vector<std::string> tokens;
      std::size_t pos = 0;
      for (const auto& t : s.tokens()) {
        auto cps = DecodeUtf8(t);
        for (auto& cp : cps) {
          if (labels[pos++]) cp = ToUpper(cp);
        }
        ++pos;
        tokens.push_back(EncodeUtf8(cps));
      }
      const double score = -m.SentenceLoss(PairFromCased(Sentence::FromTokens(tokens)));
      if (score > best) {
        best = score;
        best_labels = labels;
      }
    }
    const auto top = m.BeamSearch(s, 1 << n).front();
    EXPECT_EQ(top.labels, best_labels) << text;
    EXPECT_NEAR(top.score, best, 1e-9) << text;
  }
}

TEST(CharTaggerTest, BeamOneIsGreedyAndOutputsRoundTrip) {
  CharTagger<float> m(Small());
  m.InitUniform(9, 1.0);
  const Sentence s = Sentence::Parse("mixed 42 words ß ok");
  const auto greedy = m.BeamSearch(s, 1);
  ASSERT_EQ(greedy.size(), 1u);
  // Greedy picks the locally best label at every step.
  const Sentence out = m.Truecase(s, 1);
  EXPECT_EQ(out.Lowercased(), s);
  EXPECT_EQ(m.Truecase(s, 2).Lowercased(), s);
  EXPECT_TRUE(m.Truecase(Sentence()).empty());
}

TEST(CharTaggerTest, OverfitsTenSentences) {
  const std::vector<const char*> lines = {
      "I love iPhone .", "The McDonald's in New York .", "Hewlett-Packard and NASA .",
      "We met John .", "She moved to Paris .", "The USA and the UK .", "My iPad broke .",
      "He works at IBM .", "They visited Rome .", "Our dog is Rex ."};
  std::vector<LabeledPair> pairs;
  for (const char* l : lines) pairs.push_back(P(l));
  CharTagger<float> m(Small(32));
  CharTrainOptions opt;
  opt.epochs = 150;
  opt.batch_size = 2;
  opt.learning_rate = 0.01;
  TrainCharTagger(&m, pairs, opt);
  for (const auto& p : pairs) EXPECT_EQ(m.Truecase(p.lower), p.gold);
}

TEST(CharTaggerTest, SaveLoad) {
  CharTagger<float> m(Small());
  m.InitUniform(2);
  const std::string bytes = SerializeModelFile(m.ToModelFile());
  const auto back = CharTagger<float>::FromModelFile(ParseModelFile(bytes));
  EXPECT_EQ(SerializeModelFile(back.ToModelFile()), bytes);
  ModelFile other = m.ToModelFile();
  other.header["format"] = "truecase-hier";
  EXPECT_THROW(CharTagger<float>::FromModelFile(other), Error);
}

}  // namespace
}  // namespace truecase
