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

// UTF-8 coding and one-scalar-value case mapping.
//
// Case mapping follows the Unicode full mappings restricted to those that
// produce exactly one scalar value; anything else (e.g. U+00DF, whose
// uppercase is "SS") is caseless in that direction. This keeps a one-to-one
// alignment between input and output characters.

#ifndef TRUECASE_UNICODE_H_
#define TRUECASE_UNICODE_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace truecase {

using CodePoint = char32_t;

// Returns false on any malformed, overlong or surrogate sequence.
bool IsValidUtf8(std::string_view text);

// Decodes valid UTF-8. Throws Error(kFormat) on malformed input.
std::vector<CodePoint> DecodeUtf8(std::string_view text);

void AppendUtf8(CodePoint cp, std::string* out);
std::string EncodeUtf8(const std::vector<CodePoint>& cps);

// Number of scalar values in valid UTF-8.
std::size_t Utf8Length(std::string_view text);

CodePoint ToUpper(CodePoint cp);
CodePoint ToLower(CodePoint cp);

// Has a distinct one-scalar lowercase form.
inline bool IsUpper(CodePoint cp) { return ToLower(cp) != cp; }
// Has a distinct one-scalar uppercase form.
inline bool IsLower(CodePoint cp) { return ToUpper(cp) != cp; }
inline bool IsCased(CodePoint cp) { return IsUpper(cp) || IsLower(cp); }

std::string Lowercase(std::string_view text);
std::string Uppercase(std::string_view text);

}  // namespace truecase

#endif  // TRUECASE_UNICODE_H_
