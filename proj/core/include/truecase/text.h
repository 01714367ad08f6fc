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

// Tokenized sentences and the word- and character-level case labels that
// connect a lowercase sentence to its cased form.

#ifndef TRUECASE_TEXT_H_
#define TRUECASE_TEXT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace truecase {

// A whitespace-tokenized sentence. Tokens are non-empty valid UTF-8 without
// ASCII whitespace.
class Sentence {
 public:
  Sentence() = default;

  // Throws Error(kEmptyToken) for empty tokens and Error(kFormat) for tokens
  // with whitespace or invalid UTF-8.
  static Sentence FromTokens(std::vector<std::string> tokens);

  // Splits on runs of ASCII whitespace. Throws Error(kFormat) on invalid
  // UTF-8.
  static Sentence Parse(std::string_view line);

  const std::vector<std::string>& tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const std::string& operator[](std::size_t i) const { return tokens_[i]; }

  std::string Join() const;
  Sentence Lowercased() const;

  friend bool operator==(const Sentence&, const Sentence&) = default;

 private:
  explicit Sentence(std::vector<std::string> tokens)
      : tokens_(std::move(tokens)) {}

  std::vector<std::string> tokens_;
};

// Word-level gate: SELF copies the lowercase token, OTHER re-cases it.
enum class WordLabel : std::uint8_t { kSelf = 0, kOther = 1 };

// Character-level label: lowercase or uppercase.
enum class CharLabel : std::uint8_t { kLower = 0, kUpper = 1 };

// Word case taxonomy: all lowercase, first-letter uppercase, all caps, mixed.
enum class WordClass : std::uint8_t { kLC = 0, kUC = 1, kCA = 2, kMC = 3 };

const char* WordClassName(WordClass c);

struct LabeledPair {
  Sentence lower;
  Sentence gold;
  std::vector<WordLabel> word_labels;
  // One entry per word; all kLower for SELF words.
  std::vector<std::vector<CharLabel>> char_labels;
};

// Throws Error(kTokenCountMismatch) or Error(kNotCaseVariant).
LabeledPair DeriveLabels(const Sentence& lower, const Sentence& gold);

// Pair for a cased sentence, with the lowercase side derived from it.
LabeledPair PairFromCased(const Sentence& gold);

// char_labels[i] may be empty for SELF words. Throws Error(kLengthMismatch).
Sentence ApplyLabels(const Sentence& lower,
                     const std::vector<WordLabel>& word_labels,
                     const std::vector<std::vector<CharLabel>>& char_labels);

// Throws Error(kEmptyToken).
WordClass ClassifyWord(std::string_view token);

// True when every character of `token` keeps the lowercase label, i.e. the
// token has no character with a one-scalar uppercase form.
bool IsCaseless(std::string_view token);

struct IngestResult {
  std::vector<LabeledPair> pairs;
  std::size_t rejected = 0;
  std::size_t empty = 0;
};

// Builds labeled pairs from cased lines. Lines that are not valid case
// variants are counted in `rejected`; blank lines in `empty`.
IngestResult IngestCorpus(const std::vector<std::string>& cased_lines);

}  // namespace truecase

#endif  // TRUECASE_TEXT_H_
