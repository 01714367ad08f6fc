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

#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "truecase/baseline.h"
#include "truecase/error.h"
#include "truecase/eval.h"
#include "truecase/rng.h"
#include "truecase/text.h"

namespace truecase {
namespace {

std::vector<Sentence> Corpus(std::initializer_list<const char*> lines) {
  std::vector<Sentence> out;
  for (const char* l : lines) out.push_back(Sentence::Parse(l));
  return out;
}

Sentence S(const char* line) { return Sentence::Parse(line); }

TEST(CaseLexiconTest, InitialMixedCaseCountsAsGeneral) {
  const auto lex = CaseLexicon::Build(Corpus({"I love iPhone", "iPhone rocks"}));
  ASSERT_NE(lex.Lookup("iphone"), nullptr);
  EXPECT_EQ(lex.Lookup("iphone")->form, "iPhone");
  EXPECT_EQ(lex.Lookup("iphone")->count, 2u);
  EXPECT_EQ(BaselineTruecase(lex, S("iphone")).Join(), "iPhone");
  EXPECT_EQ(lex.total_tokens(), 5u);
}

TEST(CaseLexiconTest, InitialCapitalizationIsNotEvidence) {
  const auto lex = CaseLexicon::Build(Corpus({"The cat", "the dog", "The end"}));
  EXPECT_EQ(lex.Lookup("the")->form, "the");
  EXPECT_EQ(lex.LookupInitial("the")->form, "The");
  EXPECT_EQ(BaselineTruecase(lex, S("the cat saw the dog")).Join(), "The cat saw the dog");
  BaselineOptions flat;
  flat.positional = false;
  EXPECT_EQ(BaselineTruecase(lex, S("the cat"), flat).Join(), "the cat");
}

TEST(CaseLexiconTest, InitialOnlyWordsFallBack) {
  const auto lex = CaseLexicon::Build(Corpus({"Yesterday it rained"}));
  EXPECT_EQ(lex.Lookup("yesterday")->form, "Yesterday");
}

TEST(CaseLexiconTest, Trivial) {
  const auto lex = CaseLexicon::Build(Corpus({"a a a"}));
  EXPECT_EQ(lex.Lookup("a")->form, "a");
  // The initial "a" is not "A", so it counts as a general occurrence.
  EXPECT_EQ(lex.Lookup("a")->count, 3u);
}

TEST(CaseLexiconTest, TieBreaksOnSmallestForm) {
  const auto lex = CaseLexicon::Build(Corpus({"x Abc ABC"}));
  EXPECT_EQ(lex.Lookup("abc")->form, "ABC");
}

TEST(CaseLexiconTest, UnknownAndEmpty) {
  const auto lex = CaseLexicon::Build(Corpus({"Paris is nice"}));
  EXPECT_EQ(BaselineTruecase(lex, S("zzzz")).Join(), "zzzz");
  const CaseLexicon empty;
  EXPECT_EQ(BaselineTruecase(empty, S("paris is nice")).Join(), "paris is nice");
  EXPECT_THROW(CaseLexicon::Build({}), Error);
}

TEST(CaseLexiconTest, TsvRoundTrip) {
  const auto lex = CaseLexicon::Build(Corpus({"The iPhone", "I like NASA and iPhone", "x y"}));
  const std::string tsv = lex.ToTsv();
  const auto back = CaseLexicon::FromTsv(tsv);
  EXPECT_EQ(back.ToTsv(), tsv);
  EXPECT_EQ(back.Lookup("nasa")->form, "NASA");
  EXPECT_THROW(CaseLexicon::FromTsv("abc\tAbd\t3\n"), Error);
  EXPECT_THROW(CaseLexicon::FromTsv("abc\tAbc\n"), Error);
}

TEST(CaseLexiconProperty, FormsLowercaseToKeysAndOutputsRoundTrip) {
  const auto corpus = Corpus({"I met McDonald in New York", "NEW rules for iPhone users",
                              "The U.S. and the UK", "ß-Test Über alles"});
  const auto lex = CaseLexicon::Build(corpus);
  for (const auto& s : corpus) {
    for (const auto& t : s.tokens()) {
      const std::string key = Sentence::FromTokens({t}).Lowercased()[0];
      const auto* e = lex.Lookup(key);
      ASSERT_NE(e, nullptr);
      EXPECT_EQ(Sentence::FromTokens({e->form}).Lowercased()[0], key);
      EXPECT_GT(e->count, 0u);
    }
    const Sentence lower = s.Lowercased();
    EXPECT_EQ(BaselineTruecase(lex, lower).Lowercased(), lower);
  }
}

TEST(UppercaseFirstTest, Basic) {
  EXPECT_EQ(UppercaseFirst("abc"), "Abc");
  EXPECT_EQ(UppercaseFirst("élan"), "Élan");
  EXPECT_EQ(UppercaseFirst("42"), "42");
}

TEST(EvalNlTest, HalfRecall) {
  const auto r = EvalNl({S("I love iphone")}, {S("I love iPhone")});
  EXPECT_DOUBLE_EQ(r.precision, 1.0);
  EXPECT_DOUBLE_EQ(r.recall, 0.5);
  EXPECT_NEAR(r.f1, 2.0 / 3.0, 1e-12);
}

TEST(EvalNlTest, Perfect) {
  const auto r = EvalNl({S("I love iPhone")}, {S("I love iPhone")});
  EXPECT_DOUBLE_EQ(r.f1, 1.0);
  EXPECT_DOUBLE_EQ(r.token_accuracy, 1.0);
}

TEST(EvalNlTest, WrongCasePrediction) {
  const auto r = EvalNl({S("I lOve iPhone")}, {S("I love iPhone")});
  EXPECT_EQ(r.nl_predictions, 3u);
  EXPECT_EQ(r.nl_correct, 2u);
  EXPECT_NEAR(r.precision, 2.0 / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(r.recall, 1.0);
  EXPECT_NEAR(r.f1, 0.8, 1e-12);
}

TEST(EvalNlTest, EdgeCases) {
  const auto none = EvalNl({S("a b")}, {S("a b")});
  EXPECT_EQ(none.precision, 0.0);
  EXPECT_EQ(none.recall, 0.0);
  EXPECT_EQ(none.f1, 0.0);
  const auto lower = EvalNl({S("i love iphone")}, {S("I love iPhone")});
  EXPECT_EQ(lower.recall, 0.0);
  const auto hard = EvalNl({S("I like it")}, {S("I love it")});
  EXPECT_EQ(hard.hard_errors, 1u);
  EXPECT_THROW(EvalNl({S("a")}, {}), Error);
  EXPECT_THROW(EvalNl({S("a b")}, {S("a")}), Error);
}

// Independent recount over random corpora.
TEST(EvalNlProperty, MatchesBruteForceAndIsOrderInvariant) {
  Rng rng(9);
  const std::vector<std::string> forms = {"abc", "Abc", "ABC", "aBc", "x", "X", "1"};
  std::vector<Sentence> pred, ref;
  for (int n = 0; n < 200; ++n) {
    std::vector<std::string> p, r;
    for (std::uint64_t k = 1 + rng.Below(6); k > 0; --k) {
      const int base = static_cast<int>(rng.Below(2));
      auto pick = [&] {
        return base == 0 ? forms[rng.Below(4)] : forms[4 + rng.Below(3)];
      };
      p.push_back(pick());
      r.push_back(pick());
    }
    pred.push_back(Sentence::FromTokens(p));
    ref.push_back(Sentence::FromTokens(r));
  }
  std::size_t np = 0, nr = 0, nc = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    for (std::size_t j = 0; j < pred[i].size(); ++j) {
      const bool pn = pred[i][j] != Sentence::FromTokens({pred[i][j]}).Lowercased()[0];
      const bool rn = ref[i][j] != Sentence::FromTokens({ref[i][j]}).Lowercased()[0];
      np += pn;
      nr += rn;
      nc += pn && pred[i][j] == ref[i][j];
    }
  }
  const auto report = EvalNl(pred, ref);
  EXPECT_EQ(report.nl_predictions, np);
  EXPECT_EQ(report.nl_references, nr);
  EXPECT_EQ(report.nl_correct, nc);
  EXPECT_LE(report.nl_correct, std::min(report.nl_predictions, report.nl_references));
  const double p = double(nc) / np, r = double(nc) / nr;
  EXPECT_NEAR(report.f1, 2 * p * r / (p + r), 1e-12);

  std::vector<std::size_t> order(pred.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.Shuffle(order.begin(), order.end());
  std::vector<Sentence> pred2, ref2;
  for (std::size_t i : order) {
    pred2.push_back(pred[i]);
    ref2.push_back(ref[i]);
  }
  EXPECT_DOUBLE_EQ(EvalNl(pred2, ref2).f1, report.f1);
  EXPECT_DOUBLE_EQ(EvalNl(ref, ref).f1, 1.0);
}

TEST(BenchSpeedTest, SameSystemTwiceIsAboutOne) {
  std::vector<Sentence> corpus;
  for (int i = 0; i < 3000; ++i) corpus.push_back(S("some words to push through the loop"));
  auto work = [](const Sentence& s) {
    // Enough work per call to keep timer noise small.
    Sentence out = s;
    for (int k = 0; k < 20; ++k) out = out.Lowercased();
    return out;
  };
  const auto report = BenchSpeed({{"a", work, 1, 4, 1}, {"b", work, 1, 4, 1}}, corpus, "a",
                                 {1, 5});
  EXPECT_DOUBLE_EQ(report.Find("a").relative_speed, 1.0);
  EXPECT_NEAR(report.Find("b").relative_speed, 1.0, 0.1);
  EXPECT_EQ(report.Find("a").run_seconds.size(), 5u);
  EXPECT_EQ(report.tokens, 3000u * 7);
  const auto j = report.ToJson();
  EXPECT_EQ(j.at("batch_size"), 1);
}

TEST(BenchSpeedTest, Errors) {
  auto id = [](const Sentence& s) { return s; };
  EXPECT_THROW(BenchSpeed({{"a", id, 0, 0, 0}}, {}, "a"), Error);
  int calls = 0;
  auto flaky = [&](const Sentence& s) {
    return ++calls % 2 ? s : Sentence::Parse("changed");
  };
  EXPECT_THROW(BenchSpeed({{"a", flaky, 0, 0, 0}}, {S("x")}, "a"), Error);
}

TEST(Table2Test, RowFormat) {
  const auto r = EvalNl({S("I love iphone")}, {S("I love iPhone")});
  BenchEntry b;
  b.relative_speed = 2.2;
  b.parameters = 1300000;
  const std::string row = Table2Row("student", r, &b);
  EXPECT_EQ(row.substr(0, 8), "student\t");
  EXPECT_NE(row.find("100.00"), std::string::npos);
  EXPECT_NE(row.find("2.20x"), std::string::npos);
}

}  // namespace
}  // namespace truecase
