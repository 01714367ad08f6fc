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

// Most-frequent-form capitalizer: every word is replaced by the cased form
// it most often takes in training text.

#ifndef TRUECASE_BASELINE_H_
#define TRUECASE_BASELINE_H_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "truecase/text.h"

namespace truecase {

class CaseLexicon {
 public:
  using FormCounts = std::map<std::string, std::size_t>;

  struct Entry {
    std::string form;
    std::size_t count = 0;
  };

  // Counts forms per lowercase key. Mid-sentence tokens go to the general
  // table. A sentence-initial token goes to the initial table only when it
  // is the first-letter capitalization of its key (the form sentence
  // position would produce anyway); any other initial form, e.g. "iPhone",
  // is informative and counted as general. Throws Error(kEmptyCorpus).
  static CaseLexicon Build(const std::vector<Sentence>& cased);

  // Most frequent general form; keys never seen mid-sentence fall back to
  // the initial table. Ties go to the byte-wise smallest form. Returns
  // nullptr for unknown keys.
  const Entry* Lookup(const std::string& key) const;
  // Most frequent sentence-initial form, else Lookup(key).
  const Entry* LookupInitial(const std::string& key) const;

  std::size_t size() const { return resolved_.size(); }
  bool empty() const { return resolved_.empty(); }
  std::size_t total_tokens() const { return total_tokens_; }

  // Sorted "key\tform\tcount" lines for the resolved general table, then
  // "key\tform\tcount\tinitial" lines for the initial table.
  std::string ToTsv() const;
  // Throws Error(kFormat).
  static CaseLexicon FromTsv(const std::string& text);

 private:
  static std::map<std::string, Entry> Resolve(
      const std::map<std::string, FormCounts>& table);

  std::map<std::string, Entry> resolved_;
  std::map<std::string, Entry> initial_;
  std::size_t total_tokens_ = 0;
};

struct BaselineOptions {
  // Use the sentence-initial table for the first word.
  bool positional = true;
};

// Replaces each known word with its most frequent form; unknown words are
// copied. The output lowercases to the input.
Sentence BaselineTruecase(const CaseLexicon& lexicon, const Sentence& lower,
                          const BaselineOptions& options = {});

// "Abc" for "abc": first scalar value uppercased.
std::string UppercaseFirst(const std::string& token);

}  // namespace truecase

#endif  // TRUECASE_BASELINE_H_
