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

#include "truecase/error.h"
#include "truecase/rng.h"
#include "truecase/text.h"
#include "truecase/unicode.h"

namespace truecase {
namespace {

using L = CharLabel;
constexpr L U_ = CharLabel::kUpper;
constexpr L L_ = CharLabel::kLower;

Sentence S(const char* line) { return Sentence::Parse(line); }

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIo;
}

TEST(SentenceTest, ParseJoinRoundTrip) {
  const Sentence s = S("  hello \t world\r\n  foo ");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.Join(), "hello world foo");
  EXPECT_EQ(Sentence::Parse(s.Join()), s);
}

TEST(SentenceTest, RejectsBadTokens) {
  EXPECT_EQ(CodeOf([] { Sentence::FromTokens({"a", ""}); }), ErrorCode::kEmptyToken);
  EXPECT_EQ(CodeOf([] { Sentence::FromTokens({"a b"}); }), ErrorCode::kFormat);
  EXPECT_EQ(CodeOf([] { Sentence::Parse("ok \xC3"); }), ErrorCode::kFormat);
}

TEST(DeriveLabelsTest, IPhone) {
  const auto p = DeriveLabels(S("i love iphone"), S("I love iPhone"));
  EXPECT_EQ(p.word_labels, (std::vector<WordLabel>{WordLabel::kOther, WordLabel::kSelf,
                                                   WordLabel::kOther}));
  EXPECT_EQ(p.char_labels[2], (std::vector<L>{L_, U_, L_, L_, L_, L_}));
}

TEST(DeriveLabelsTest, Identity) {
  const auto p = DeriveLabels(S("a b"), S("a b"));
  EXPECT_EQ(p.word_labels, (std::vector<WordLabel>{WordLabel::kSelf, WordLabel::kSelf}));
}

TEST(DeriveLabelsTest, HewlettPackard) {
  const auto p = DeriveLabels(S("hewlett-packard rocks"), S("Hewlett-Packard rocks"));
  EXPECT_EQ(p.word_labels, (std::vector<WordLabel>{WordLabel::kOther, WordLabel::kSelf}));
  EXPECT_EQ(p.char_labels[0], (std::vector<L>{U_, L_, L_, L_, L_, L_, L_, L_, U_, L_, L_,
                                              L_, L_, L_, L_}));
  EXPECT_EQ(p.char_labels[1].size(), 5u);
}

TEST(DeriveLabelsTest, Errors) {
  EXPECT_EQ(CodeOf([] { DeriveLabels(S("a b"), S("a")); }), ErrorCode::kTokenCountMismatch);
  EXPECT_EQ(CodeOf([] { DeriveLabels(S("abc"), S("Abd")); }), ErrorCode::kNotCaseVariant);
  EXPECT_EQ(CodeOf([] { DeriveLabels(S("abc"), S("abcd")); }), ErrorCode::kNotCaseVariant);
  EXPECT_EQ(CodeOf([] { DeriveLabels(S("Abc"), S("Abc")); }), ErrorCode::kNotCaseVariant);
}

TEST(ApplyLabelsTest, McDonalds) {
  const Sentence out = ApplyLabels(S("mcdonald's"), {WordLabel::kOther},
                                   {{U_, L_, U_, L_, L_, L_, L_, L_, L_, L_}});
  EXPECT_EQ(out.Join(), "McDonald's");
}

TEST(ApplyLabelsTest, SelfCopies) {
  EXPECT_EQ(ApplyLabels(S("x"), {WordLabel::kSelf}, {{}}).Join(), "x");
  // SELF ignores any character labels.
  EXPECT_EQ(ApplyLabels(S("x"), {WordLabel::kSelf}, {{U_}}).Join(), "x");
}

TEST(ApplyLabelsTest, SharpSIsCaseless) {
  // ß has no single-scalar uppercase form, so it stays as it is.
  EXPECT_EQ(ToUpper(0xDF), 0xDFu);
  const Sentence out = ApplyLabels(S("ß-test"), {WordLabel::kOther},
                                   {{U_, L_, L_, L_, L_, L_}});
  EXPECT_EQ(out.Join(), "ß-test");
  EXPECT_TRUE(IsCaseless("ß-42"));
  EXPECT_FALSE(IsCaseless("ß-t"));
}

TEST(ApplyLabelsTest, NonAscii) {
  const Sentence out = ApplyLabels(S("école ΣΟΦΊΑ"), {WordLabel::kOther, WordLabel::kSelf},
                                   {{U_, L_, L_, L_, L_}, {}});
  EXPECT_EQ(out[0], "École");
  const auto p = DeriveLabels(S("σοφία"), S("ΣΟΦΊΑ"));
  EXPECT_EQ(p.char_labels[0], (std::vector<L>{U_, U_, U_, U_, U_}));
}

TEST(ApplyLabelsTest, LengthMismatch) {
  EXPECT_EQ(CodeOf([] { ApplyLabels(S("ab cd"), {WordLabel::kOther}, {{U_, L_}}); }),
            ErrorCode::kLengthMismatch);
  EXPECT_EQ(CodeOf([] { ApplyLabels(S("ab"), {WordLabel::kOther}, {{U_}}); }),
            ErrorCode::kLengthMismatch);
}

TEST(ClassifyWordTest, Classes) {
  EXPECT_EQ(ClassifyWord("iPhone"), WordClass::kMC);
  EXPECT_EQ(ClassifyWord("hello"), WordClass::kLC);
  EXPECT_EQ(ClassifyWord("USA"), WordClass::kCA);
  EXPECT_EQ(ClassifyWord("Hello"), WordClass::kUC);
  EXPECT_EQ(ClassifyWord("McDonald's"), WordClass::kMC);
  EXPECT_EQ(ClassifyWord("U.S."), WordClass::kCA);
  EXPECT_EQ(ClassifyWord("42"), WordClass::kLC);
  EXPECT_EQ(ClassifyWord("A"), WordClass::kCA);
  EXPECT_EQ(CodeOf([] { ClassifyWord(""); }), ErrorCode::kEmptyToken);
}

TEST(IngestTest, CountsRejectedAndEmpty) {
  const auto r = IngestCorpus({"Hello World", "", "  ", "bad \xC3(", "fine"});
  EXPECT_EQ(r.pairs.size(), 2u);
  EXPECT_EQ(r.empty, 2u);
  EXPECT_EQ(r.rejected, 1u);
}

// Random casings drawn from a small alphabet with caseless symbols.
std::string RandomToken(Rng* rng) {
  static const std::vector<CodePoint> alphabet = {'a', 'b', 'z', 'x', '-', '\'', '7',
                                                  0xE9, 0x3C3, 0x436, 0xDF, 0x4E2D};
  std::vector<CodePoint> cps(1 + rng->Below(8));
  for (auto& cp : cps) {
    cp = alphabet[rng->Below(alphabet.size())];
    if (rng->Below(3) == 0) cp = ToUpper(cp);
  }
  return EncodeUtf8(cps);
}

TEST(RoundTripProperty, DeriveThenApplyIsIdentity) {
  Rng rng(7);
  for (int n = 0; n < 2000; ++n) {
    std::vector<std::string> tokens(1 + rng.Below(10));
    for (auto& t : tokens) t = RandomToken(&rng);
    const Sentence gold = Sentence::FromTokens(tokens);
    const LabeledPair p = PairFromCased(gold);
    ASSERT_EQ(ApplyLabels(p.lower, p.word_labels, p.char_labels), gold) << gold.Join();
    EXPECT_EQ(p.lower, gold.Lowercased());
    for (std::size_t i = 0; i < gold.size(); ++i) {
      EXPECT_EQ(p.word_labels[i] == WordLabel::kSelf, gold[i] == p.lower[i]);
      EXPECT_EQ(p.char_labels[i].size(), DecodeUtf8(p.lower[i]).size());
      EXPECT_EQ(ClassifyWord(p.lower[i]), WordClass::kLC);
    }
  }
}

TEST(RoundTripProperty, ApplyOnlyChangesCase) {
  Rng rng(11);
  for (int n = 0; n < 2000; ++n) {
    std::vector<std::string> tokens(1 + rng.Below(6));
    for (auto& t : tokens) t = Lowercase(RandomToken(&rng));
    const Sentence lower = Sentence::FromTokens(tokens);
    std::vector<WordLabel> wl;
    std::vector<std::vector<CharLabel>> cl;
    for (const auto& t : tokens) {
      wl.push_back(rng.Below(2) ? WordLabel::kOther : WordLabel::kSelf);
      std::vector<CharLabel> c(DecodeUtf8(t).size());
      for (auto& x : c) x = rng.Below(2) ? U_ : L_;
      cl.push_back(std::move(c));
    }
    const Sentence out = ApplyLabels(lower, wl, cl);
    ASSERT_EQ(out.Lowercased().Join(), lower.Join());
  }
}

}  // namespace
}  // namespace truecase
