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

#include "truecase/unicode.h"

#include <algorithm>
#include <iterator>

#include "truecase/error.h"

namespace truecase {
namespace {

struct CaseMapping {
  char32_t from;
  char32_t to;
};

#include "case_table.inc"

template <std::size_t N>
CodePoint Lookup(const CaseMapping (&table)[N], CodePoint cp) {
  auto it = std::lower_bound(
      std::begin(table), std::end(table), cp,
      [](const CaseMapping& m, CodePoint c) { return m.from < c; });
  if (it != std::end(table) && it->from == cp) return it->to;
  return cp;
}

// Decodes one scalar at text[*pos]; returns false if malformed.
bool DecodeOne(std::string_view text, std::size_t* pos, CodePoint* out) {
  const auto b0 = static_cast<unsigned char>(text[*pos]);
  int extra;
  CodePoint cp;
  if (b0 < 0x80) {
    *out = b0;
    ++*pos;
    return true;
  } else if ((b0 & 0xE0) == 0xC0) {
    extra = 1;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    extra = 2;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    extra = 3;
    cp = b0 & 0x07;
  } else {
    return false;
  }
  if (*pos + extra >= text.size()) return false;
  for (int i = 1; i <= extra; ++i) {
    const auto b = static_cast<unsigned char>(text[*pos + i]);
    if ((b & 0xC0) != 0x80) return false;
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr CodePoint kMin[] = {0, 0x80, 0x800, 0x10000};
  if (cp < kMin[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    return false;
  }
  *out = cp;
  *pos += extra + 1;
  return true;
}

}  // namespace

bool IsValidUtf8(std::string_view text) {
  std::size_t pos = 0;
  CodePoint cp;
  while (pos < text.size()) {
    if (!DecodeOne(text, &pos, &cp)) return false;
  }
  return true;
}

std::vector<CodePoint> DecodeUtf8(std::string_view text) {
  std::vector<CodePoint> out;
  out.reserve(text.size());
  std::size_t pos = 0;
  CodePoint cp;
  while (pos < text.size()) {
    if (!DecodeOne(text, &pos, &cp)) {
      throw Error(ErrorCode::kFormat,
                  "invalid UTF-8 at byte " + std::to_string(pos));
    }
    out.push_back(cp);
  }
  return out;
}

void AppendUtf8(CodePoint cp, std::string* out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string EncodeUtf8(const std::vector<CodePoint>& cps) {
  std::string out;
  out.reserve(cps.size());
  for (CodePoint cp : cps) AppendUtf8(cp, &out);
  return out;
}

std::size_t Utf8Length(std::string_view text) {
  std::size_t n = 0;
  for (char c : text) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

CodePoint ToUpper(CodePoint cp) {
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') ? cp - 32 : cp;
  return Lookup(kUpperMappings, cp);
}

CodePoint ToLower(CodePoint cp) {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
  return Lookup(kLowerMappings, cp);
}

std::string Lowercase(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (CodePoint cp : DecodeUtf8(text)) AppendUtf8(ToLower(cp), &out);
  return out;
}

std::string Uppercase(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (CodePoint cp : DecodeUtf8(text)) AppendUtf8(ToUpper(cp), &out);
  return out;
}

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kTokenCountMismatch: return "TokenCountMismatch";
    case ErrorCode::kNotCaseVariant: return "NotCaseVariant";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptyToken: return "EmptyToken";
    case ErrorCode::kEmptySentence: return "EmptySentence";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kAlignmentMismatch: return "AlignmentMismatch";
    case ErrorCode::kFormat: return "FormatError";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kDiverged: return "Diverged";
    case ErrorCode::kRejectionRate: return "RejectionRate";
  }
  return "Unknown";
}

}  // namespace truecase
