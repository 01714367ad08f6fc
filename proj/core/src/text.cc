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

#include "truecase/text.h"

#include "truecase/error.h"
#include "truecase/unicode.h"

namespace truecase {
namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

}  // namespace

Sentence Sentence::FromTokens(std::vector<std::string> tokens) {
  for (const auto& t : tokens) {
    if (t.empty()) throw Error(ErrorCode::kEmptyToken, "empty token");
    for (char c : t) {
      if (IsSpace(c)) {
        throw Error(ErrorCode::kFormat, "whitespace inside token '" + t + "'");
      }
    }
    if (!IsValidUtf8(t)) throw Error(ErrorCode::kFormat, "invalid UTF-8 token");
  }
  return Sentence(std::move(tokens));
}

Sentence Sentence::Parse(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && IsSpace(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !IsSpace(line[i])) ++i;
    if (i > start) tokens.emplace_back(line.substr(start, i - start));
  }
  for (const auto& t : tokens) {
    if (!IsValidUtf8(t)) throw Error(ErrorCode::kFormat, "invalid UTF-8 token");
  }
  return Sentence(std::move(tokens));
}

std::string Sentence::Join() const {
  std::string out;
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens_[i];
  }
  return out;
}

Sentence Sentence::Lowercased() const {
  std::vector<std::string> lower;
  lower.reserve(tokens_.size());
  for (const auto& t : tokens_) lower.push_back(Lowercase(t));
  return Sentence(std::move(lower));
}

const char* WordClassName(WordClass c) {
  switch (c) {
    case WordClass::kLC: return "LC";
    case WordClass::kUC: return "UC";
    case WordClass::kCA: return "CA";
    case WordClass::kMC: return "MC";
  }
  return "?";
}

LabeledPair DeriveLabels(const Sentence& lower, const Sentence& gold) {
  if (lower.size() != gold.size()) {
    throw Error(ErrorCode::kTokenCountMismatch,
                std::to_string(lower.size()) + " vs " +
                    std::to_string(gold.size()) + " tokens");
  }
  LabeledPair pair{lower, gold, {}, {}};
  pair.word_labels.reserve(lower.size());
  pair.char_labels.reserve(lower.size());
  for (std::size_t i = 0; i < lower.size(); ++i) {
    const auto lc = DecodeUtf8(lower[i]);
    const auto gc = DecodeUtf8(gold[i]);
    if (lc.size() != gc.size()) {
      throw Error(ErrorCode::kNotCaseVariant,
                  "'" + gold[i] + "' vs '" + lower[i] + "'");
    }
    std::vector<CharLabel> labels(lc.size(), CharLabel::kLower);
    for (std::size_t j = 0; j < lc.size(); ++j) {
      if (ToLower(lc[j]) != lc[j]) {
        throw Error(ErrorCode::kNotCaseVariant,
                    "lower side '" + lower[i] + "' is not lowercase");
      }
      if (gc[j] == lc[j]) continue;
      if (gc[j] != ToUpper(lc[j])) {
        throw Error(ErrorCode::kNotCaseVariant,
                    "'" + gold[i] + "' vs '" + lower[i] + "'");
      }
      labels[j] = CharLabel::kUpper;
    }
    pair.word_labels.push_back(lower[i] == gold[i] ? WordLabel::kSelf
                                                   : WordLabel::kOther);
    pair.char_labels.push_back(std::move(labels));
  }
  return pair;
}

LabeledPair PairFromCased(const Sentence& gold) {
  return DeriveLabels(gold.Lowercased(), gold);
}

Sentence ApplyLabels(const Sentence& lower,
                     const std::vector<WordLabel>& word_labels,
                     const std::vector<std::vector<CharLabel>>& char_labels) {
  if (word_labels.size() != lower.size() ||
      char_labels.size() != lower.size()) {
    throw Error(ErrorCode::kLengthMismatch, "label count differs from tokens");
  }
  std::vector<std::string> out;
  out.reserve(lower.size());
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (word_labels[i] == WordLabel::kSelf) {
      out.push_back(lower[i]);
      continue;
    }
    auto cps = DecodeUtf8(lower[i]);
    if (char_labels[i].size() != cps.size()) {
      throw Error(ErrorCode::kLengthMismatch,
                  "char labels for '" + lower[i] + "'");
    }
    for (std::size_t j = 0; j < cps.size(); ++j) {
      if (char_labels[i][j] == CharLabel::kUpper) cps[j] = ToUpper(cps[j]);
    }
    out.push_back(EncodeUtf8(cps));
  }
  return Sentence::FromTokens(std::move(out));
}

WordClass ClassifyWord(std::string_view token) {
  if (token.empty()) throw Error(ErrorCode::kEmptyToken, "empty token");
  const auto cps = DecodeUtf8(token);
  int upper = 0;
  int lower = 0;
  for (CodePoint cp : cps) {
    if (IsUpper(cp)) {
      ++upper;
    } else if (IsLower(cp)) {
      ++lower;
    }
  }
  if (upper == 0) return WordClass::kLC;
  if (lower == 0) return WordClass::kCA;
  if (IsUpper(cps[0]) && upper == 1) return WordClass::kUC;
  return WordClass::kMC;
}

bool IsCaseless(std::string_view token) {
  for (CodePoint cp : DecodeUtf8(token)) {
    if (ToUpper(cp) != cp) return false;
  }
  return true;
}

IngestResult IngestCorpus(const std::vector<std::string>& cased_lines) {
  IngestResult result;
  for (const auto& line : cased_lines) {
    try {
      Sentence gold = Sentence::Parse(line);
      if (gold.empty()) {
        ++result.empty;
        continue;
      }
      result.pairs.push_back(PairFromCased(gold));
    } catch (const Error&) {
      ++result.rejected;
    }
  }
  return result;
}

}  // namespace truecase
