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

#include "truecase/error.h"
#include "truecase/gradcheck.h"
#include "truecase/hier_model.h"
#include "truecase/rng.h"
#include "truecase/text.h"
#include "truecase/unicode.h"

namespace truecase {
namespace {

ModelConfig Tiny(int dim, int layers, int buckets) {
  ModelConfig c;
  c.preset = "tiny";
  c.input_embedding_size = dim;
  c.output_embedding_size = dim;
  c.forward_encoder_layers = layers;
  c.backward_encoder_layers = layers;
  c.decoder_layers = layers;
  c.encoder_cells = dim;
  c.decoder_cells = dim;
  c.num_buckets = buckets;
  return c;
}

std::size_t Gru(std::size_t in, std::size_t h) { return 3 * (in * h + h * h + h); }

// Parameter count re-derived from the layer shapes.
std::size_t ExpectedCount(const ModelConfig& c) {
  const std::size_t d = c.input_embedding_size, o = c.output_embedding_size;
  const std::size_t e = c.encoder_cells, h = c.decoder_cells;
  const std::size_t l = c.forward_encoder_layers, dl = c.decoder_layers;
  auto encoder = [&] {
    std::size_t n = 0;
    for (std::size_t k = 0; k < l; ++k) n += 2 * Gru(k == 0 ? d : e, e / 2);
    return n;
  };
  auto decoder = [&](std::size_t in) {
    std::size_t n = Gru(in, h);
    for (std::size_t k = 1; k < dl; ++k) n += Gru(h, h);
    return n;
  };
  const std::size_t out = 2 * h + 2;
  return d * c.num_buckets +                            // shared embedding
         encoder() + 3 * o + decoder(e + o) + out +     // word level
         encoder() + (l * e * e + e) + 3 * o + decoder(2 * e + o) + out;
}

TEST(HierModelTest, ParameterCountsMatchLayerShapes) {
  for (const auto& c : {ModelConfig::Student(), ModelConfig::Teacher(), Tiny(16, 2, 64)}) {
    HierModel<float> m(c);
    EXPECT_EQ(m.ParameterCount(), ExpectedCount(c)) << c.preset;
  }
  EXPECT_EQ(HierModel<float>(ModelConfig::Student()).ParameterCount(), 1150852u);
  EXPECT_EQ(HierModel<float>(ModelConfig::Teacher()).ParameterCount(), 16471556u);
}

TEST(HierModelTest, ZeroModelIsUniform) {
  HierModel<double> m(Tiny(8, 1, 32));
  const Sentence s = Sentence::Parse("hello big world");
  const auto w = m.WordTagLogProbs(s, {WordLabel::kOther});
  EXPECT_NEAR(w[0], std::log(0.5), 1e-12);
  EXPECT_NEAR(w[1], std::log(0.5), 1e-12);
  const auto c = m.CharTransduceLogProbs(s, 2, {CharLabel::kUpper});
  EXPECT_NEAR(c[0], std::log(0.5), 1e-12);
}

TEST(HierModelTest, UniformLossCountsBinaryDecisions) {
  HierModel<double> m(Tiny(8, 1, 32));
  // Two OTHER words with three cased characters each; '-' is forced.
  const LabeledPair pair = PairFromCased(Sentence::Parse("Abc D-EF"));
  EXPECT_NEAR(m.SentenceLoss(pair), 8 * std::log(2.0), 1e-12);
  const LabeledPair self = PairFromCased(Sentence::Parse("abc 12 def"));
  EXPECT_NEAR(m.SentenceLoss(self), 3 * std::log(2.0), 1e-12);
}

TEST(HierModelTest, LogProbsNormalizeAndCaselessIsForced) {
  HierModel<double> m(Tiny(8, 2, 32));
  m.InitUniform(3, 0.5);
  const Sentence s = Sentence::Parse("hewlett-packard rocks ok");
  for (std::size_t k = 0; k < s.size(); ++k) {
    const auto lp = m.WordTagLogProbs(s, std::vector<WordLabel>(k, WordLabel::kOther));
    EXPECT_NEAR(std::exp(lp[0]) + std::exp(lp[1]), 1.0, 1e-6);
  }
  std::vector<CharLabel> prefix;
  const auto chars = DecodeUtf8(s[0]);
  for (std::size_t j = 0; j < chars.size(); ++j) {
    const auto lp = m.CharTransduceLogProbs(s, 0, prefix);
    if (chars[j] == U'-') {
      EXPECT_EQ(lp[0], 0.0);
      EXPECT_TRUE(std::isinf(lp[1]) && lp[1] < 0);
    } else {
      EXPECT_NEAR(std::exp(lp[0]) + std::exp(lp[1]), 1.0, 1e-6);
    }
    prefix.push_back(CharLabel::kLower);
  }
  EXPECT_THROW(m.CharTransduceLogProbs(s, 3, {}), Error);
}

TEST(HierModelTest, SentenceLossGradientChecks) {
  for (int layers : {1, 2}) {
    HierModel<double> m(Tiny(16, layers, layers == 1 ? 64 : 16));
    m.InitUniform(17, 0.3);
    const LabeledPair pair =
        PairFromCased(Sentence::Parse("I love iPhone-X , 42 McDonald's"));
    const auto r = GradCheck(&m.params(), [&](bool grad) {
      return static_cast<double>(grad ? m.AccumulateGradients(pair)
                                      : m.SentenceLoss(pair));
    });
    EXPECT_LT(r.max_relative_error, 1e-4)
        << r.worst_parameter << "[" << r.worst_index << "] ad=" << r.analytic
        << " fd=" << r.numeric;
  }
}

// Exhaustive argmax with the same tie rule (label 0 first).
template <typename Score>
std::vector<std::uint8_t> Exhaustive(int n, Score score, double* best_score) {
  std::vector<std::uint8_t> best;
  *best_score = -INFINITY;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<std::uint8_t> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = (mask >> (n - 1 - i)) & 1;
    const double s = score(labels);
    if (s > *best_score || (s == *best_score && labels < best)) {
      *best_score = s;
      best = labels;
    }
  }
  return best;
}

std::string RandomWord(Rng* rng) {
  static const std::string kAlphabet = "abcdeiou-'1";
  std::string w;
  const int len = 1 + static_cast<int>(rng->Below(6));
  for (int i = 0; i < len; ++i) w.push_back(kAlphabet[rng->Below(kAlphabet.size())]);
  return w;
}

TEST(HierModelTest, WideBeamMatchesExhaustiveSearch) {
  Rng rng(99);
  HierModel<double> m(Tiny(8, 1, 64));
  m.InitUniform(5, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::string> tokens;
    const int n = 1 + static_cast<int>(rng.Below(6));
    for (int i = 0; i < n; ++i) tokens.push_back(RandomWord(&rng));
    const Sentence s = Sentence::FromTokens(tokens);
    double want = 0;
    const auto best = Exhaustive(n, [&](const std::vector<std::uint8_t>& l) {
      std::vector<WordLabel> wl(l.size());
      for (std::size_t i = 0; i < l.size(); ++i) wl[i] = static_cast<WordLabel>(l[i]);
      return m.ScoreWordLabels(s, wl);
    }, &want);
    const auto beam = m.BeamSearchWords(s, 1 << n);
    EXPECT_EQ(beam.front().labels, best);
    EXPECT_NEAR(beam.front().score, want, 1e-9);
    EXPECT_EQ(beam.size(), std::size_t{1} << n);
  }
}

TEST(HierModelTest, WideCharBeamMatchesExhaustiveSearch) {
  Rng rng(17);
  HierModel<double> m(Tiny(8, 1, 64));
  m.InitUniform(8, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::string> tokens;
    const int n = 1 + static_cast<int>(rng.Below(4));
    for (int i = 0; i < n; ++i) tokens.push_back(RandomWord(&rng));
    const Sentence s = Sentence::FromTokens(tokens);
    const std::size_t w = rng.Below(n);
    const int len = static_cast<int>(DecodeUtf8(s[w]).size());
    double want = 0;
    const auto best = Exhaustive(len, [&](const std::vector<std::uint8_t>& l) {
      std::vector<CharLabel> cl(l.size());
      for (std::size_t i = 0; i < l.size(); ++i) cl[i] = static_cast<CharLabel>(l[i]);
      return m.ScoreCharLabels(s, w, cl);
    }, &want);
    const auto beam = m.BeamSearchChars(s, w, 1 << len);
    EXPECT_EQ(beam.front().labels, best) << s.Join() << " word " << w;
    EXPECT_NEAR(beam.front().score, want, 1e-9);
  }
}

TEST(HierModelTest, BeamOneIsGreedy) {
  HierModel<double> m(Tiny(8, 1, 64));
  m.InitUniform(6, 1.0);
  const Sentence s = Sentence::Parse("the quick brown fox jumps");
  std::vector<WordLabel> greedy;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto lp = m.WordTagLogProbs(s, greedy);
    greedy.push_back(lp[1] > lp[0] ? WordLabel::kOther : WordLabel::kSelf);
  }
  const auto beam = m.BeamSearchWords(s, 1);
  ASSERT_EQ(beam.size(), 1u);
  for (std::size_t i = 0; i < s.size(); ++i) {
    EXPECT_EQ(beam[0].labels[i], static_cast<std::uint8_t>(greedy[i]));
  }
}

TEST(HierModelTest, CaselessWordHasSingleForcedHypothesis) {
  HierModel<double> m(Tiny(8, 1, 64));
  m.InitUniform(6, 1.0);
  const auto beam = m.BeamSearchChars(Sentence::Parse("x 1,234.5 y"), 1, 4);
  ASSERT_EQ(beam.size(), 1u);
  EXPECT_EQ(beam[0].score, 0.0);
  EXPECT_EQ(beam[0].labels, std::vector<std::uint8_t>(7, 0));
}

TEST(HierModelTest, UntrainedModelKeepsInput) {
  HierModel<float> m(ModelConfig::Student());
  const Sentence s = Sentence::Parse("i love iphone .");
  EXPECT_EQ(m.Truecase(s), s);
  EXPECT_EQ(m.Truecase(s, DecodeMode::kFullBeam), s);
}

TEST(HierModelTest, CharLevelSeesOnlyWordAndContext) {
  HierModel<double> m(Tiny(8, 2, 64));
  m.InitUniform(12, 0.8);
  const Sentence a = Sentence::Parse("the mcdonald's menu");
  const Sentence b = Sentence::Parse("ehtxq mcdonald's unem , zz");
  const std::vector<CharLabel> prefix = {CharLabel::kUpper, CharLabel::kLower};
  for (const Sentence* s : {&a, &b}) {
    const auto ctx = m.WordContext(m.Encode(*s), 1);
    const auto direct = m.CharTransduceLogProbs(*s, 1, prefix);
    const auto via_ctx = m.CharTransduceLogProbs("mcdonald's", ctx, prefix);
    EXPECT_EQ(direct[0], via_ctx[0]);
    EXPECT_EQ(direct[1], via_ctx[1]);
  }
  // Same word and context give the same result whatever the neighbors are.
  const auto ctx = m.WordContext(m.Encode(a), 1);
  EXPECT_EQ(m.CharTransduceLogProbs("mcdonald's", ctx, prefix),
            m.CharTransduceLogProbs("mcdonald's", Vector<double>(ctx), prefix));
}

TEST(HierModelTest, FullBeamScoreIsAtLeastBestPath) {
  Rng rng(7);
  HierModel<double> m(Tiny(8, 1, 64));
  m.InitUniform(8, 1.5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::string> tokens;
    const int n = 1 + static_cast<int>(rng.Below(6));
    for (int i = 0; i < n; ++i) tokens.push_back(RandomWord(&rng));
    const Sentence s = Sentence::FromTokens(tokens);
    for (int beam : {2, 4, 1 << n}) {
      const auto best = m.TruecaseScored(s, DecodeMode::kBestPath, beam);
      const auto full = m.TruecaseScored(s, DecodeMode::kFullBeam, beam);
      EXPECT_GE(full.score, best.score - 1e-12);
      EXPECT_EQ(full.output.Lowercased(), s);
      EXPECT_EQ(best.output.Lowercased(), s);
    }
  }
}

TEST(HierModelTest, LongSentencesAreChunked) {
  ModelConfig c = Tiny(8, 1, 64);
  c.max_sentence_words = 7;
  HierModel<float> m(c);
  m.InitUniform(1, 1.0);
  std::vector<std::string> tokens;
  Rng rng(3);
  for (int i = 0; i < 30; ++i) tokens.push_back(RandomWord(&rng));
  const Sentence s = Sentence::FromTokens(tokens);
  const Sentence out = m.Truecase(s);
  EXPECT_EQ(out.size(), s.size());
  EXPECT_EQ(out.Lowercased(), s);
}

TEST(HierModelTest, SaveLoadRoundTrip) {
  HierModel<float> m(Tiny(8, 2, 64));
  m.InitUniform(4, 0.5);
  m.metadata()["seed"] = 4;
  const std::string bytes = SerializeModelFile(m.ToModelFile());
  const HierModel<float> back = HierModel<float>::FromModelFile(ParseModelFile(bytes));
  EXPECT_EQ(back.config(), m.config());
  EXPECT_EQ(back.metadata()["seed"], 4);
  for (std::size_t i = 0; i < m.params().size(); ++i) {
    EXPECT_EQ(back.params()[i].value, m.params()[i].value);
  }
  EXPECT_EQ(SerializeModelFile(back.ToModelFile()), bytes);
}

TEST(HierModelTest, FrozenModelDecodesLikeUnfrozen) {
  HierModel<double> m(Tiny(8, 2, 64));
  m.InitUniform(9, 1.0);
  Rng rng(11);
  std::vector<Sentence> sentences;
  for (int i = 0; i < 20; ++i) {
    std::vector<std::string> tokens;
    for (int k = 0; k < 1 + static_cast<int>(rng.Below(6)); ++k) {
      tokens.push_back(RandomWord(&rng));
    }
    sentences.push_back(Sentence::FromTokens(tokens));
  }
  std::vector<TruecaseResult> plain;
  for (const auto& s : sentences) plain.push_back(m.TruecaseScored(s, DecodeMode::kFullBeam));
  m.Freeze();
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const auto frozen = m.TruecaseScored(sentences[i], DecodeMode::kFullBeam);
    EXPECT_EQ(frozen.output, plain[i].output);
    EXPECT_DOUBLE_EQ(frozen.score, plain[i].score);
  }
  // Writing weights through params() must not see stale products.
  auto& store = m.params();
  for (std::size_t i = 0; i < store.size(); ++i) {
    if (store[i].name == "word.label_embedding") store[i].value.setRandom();
  }
  HierModel<double> fresh(m.config());
  for (std::size_t i = 0; i < m.params().size(); ++i) {
    fresh.params()[i].value = m.params()[i].value;
  }
  for (const auto& s : sentences) {
    EXPECT_DOUBLE_EQ(m.TruecaseScored(s, DecodeMode::kFullBeam).score,
                     fresh.TruecaseScored(s, DecodeMode::kFullBeam).score);
  }
}

TEST(HierModelTest, TruncatedFileReportsOffset) {
  HierModel<float> m(Tiny(8, 1, 16));
  const std::string bytes = SerializeModelFile(m.ToModelFile());
  try {
    ParseModelFile(std::string_view(bytes).substr(0, bytes.size() - 10));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFormat);
    EXPECT_NE(std::string(e.what()).find("byte offset"), std::string::npos);
  }
}

}  // namespace
}  // namespace truecase
