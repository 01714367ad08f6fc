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

#include "truecase/baseline.h"

#include <sstream>

#include "truecase/error.h"
#include "truecase/unicode.h"

namespace truecase {

std::string UppercaseFirst(const std::string& token) {
  auto cps = DecodeUtf8(token);
  if (!cps.empty()) cps[0] = ToUpper(cps[0]);
  return EncodeUtf8(cps);
}

std::map<std::string, CaseLexicon::Entry> CaseLexicon::Resolve(
    const std::map<std::string, FormCounts>& table) {
  std::map<std::string, Entry> out;
  for (const auto& [key, forms] : table) {
    Entry best;
    // Forms iterate in byte order, so strict > keeps the smallest on ties.
    for (const auto& [form, count] : forms) {
      if (count > best.count) best = {form, count};
    }
    out.emplace(key, std::move(best));
  }
  return out;
}

CaseLexicon CaseLexicon::Build(const std::vector<Sentence>& cased) {
  std::map<std::string, FormCounts> general;
  std::map<std::string, FormCounts> initial;
  CaseLexicon lex;
  for (const auto& s : cased) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string key = Lowercase(s[i]);
      ++lex.total_tokens_;
      if (i == 0 && s[i] == UppercaseFirst(key)) {
        ++initial[key][s[i]];
      } else {
        ++general[key][s[i]];
      }
    }
  }
  if (lex.total_tokens_ == 0) throw Error(ErrorCode::kEmptyCorpus, "no tokens");
  lex.resolved_ = Resolve(general);
  lex.initial_ = Resolve(initial);
  for (const auto& [key, entry] : lex.initial_) lex.resolved_.emplace(key, entry);
  return lex;
}

const CaseLexicon::Entry* CaseLexicon::Lookup(const std::string& key) const {
  auto it = resolved_.find(key);
  return it == resolved_.end() ? nullptr : &it->second;
}

const CaseLexicon::Entry* CaseLexicon::LookupInitial(const std::string& key) const {
  auto it = initial_.find(key);
  return it == initial_.end() ? Lookup(key) : &it->second;
}

std::string CaseLexicon::ToTsv() const {
  std::string out;
  for (const auto& [key, e] : resolved_) {
    out += key + "\t" + e.form + "\t" + std::to_string(e.count) + "\n";
  }
  for (const auto& [key, e] : initial_) {
    out += key + "\t" + e.form + "\t" + std::to_string(e.count) + "\tinitial\n";
  }
  return out;
}

CaseLexicon CaseLexicon::FromTsv(const std::string& text) {
  CaseLexicon lex;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t tab; (tab = line.find('\t', start)) != std::string::npos;
         start = tab + 1) {
      fields.push_back(line.substr(start, tab - start));
    }
    fields.push_back(line.substr(start));
    const bool is_initial = fields.size() == 4 && fields[3] == "initial";
    if (fields.size() != 3 && !is_initial) {
      throw Error(ErrorCode::kFormat, "lexicon line " + std::to_string(lineno));
    }
    Entry e;
    e.form = fields[1];
    try {
      e.count = std::stoul(fields[2]);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kFormat, "bad count on lexicon line " + std::to_string(lineno));
    }
    if (!IsValidUtf8(e.form) || Lowercase(e.form) != fields[0] || e.count == 0) {
      throw Error(ErrorCode::kFormat, "bad entry on lexicon line " + std::to_string(lineno));
    }
    lex.total_tokens_ += is_initial ? 0 : e.count;
    (is_initial ? lex.initial_ : lex.resolved_)[fields[0]] = std::move(e);
  }
  return lex;
}

Sentence BaselineTruecase(const CaseLexicon& lexicon, const Sentence& lower,
                          const BaselineOptions& options) {
  std::vector<std::string> out;
  out.reserve(lower.size());
  for (std::size_t i = 0; i < lower.size(); ++i) {
    const std::string key = Lowercase(lower[i]);
    const CaseLexicon::Entry* e = i == 0 && options.positional
                                      ? lexicon.LookupInitial(key)
                                      : lexicon.Lookup(key);
    out.push_back(e != nullptr && key == lower[i] ? e->form : lower[i]);
  }
  return Sentence::FromTokens(std::move(out));
}

}  // namespace truecase
