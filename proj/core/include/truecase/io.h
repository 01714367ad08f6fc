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

#ifndef TRUECASE_IO_H_
#define TRUECASE_IO_H_

#include <string>
#include <vector>

namespace truecase {

// One entry per line without the terminator; a trailing '\r' is dropped.
// Throws Error(kIo).
std::vector<std::string> ReadLines(const std::string& path);
void WriteLines(const std::string& path, const std::vector<std::string>& lines);

// Writes bytes atomically enough for our purposes: to `path`.tmp, then
// renames. Throws Error(kIo).
void WriteFileBytes(const std::string& path, const std::string& bytes);

}  // namespace truecase

#endif  // TRUECASE_IO_H_
