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

// Loads any of the three capitalizers from disk behind one interface.

#ifndef TRUECASE_TOOLS_SYSTEMS_H_
#define TRUECASE_TOOLS_SYSTEMS_H_

#include <functional>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "truecase/hier_model.h"
#include "truecase/text.h"

namespace truecase {

struct LoadedSystem {
  std::string kind;  // "hier", "char" or "lexicon"
  std::function<Sentence(const Sentence&)> run;
  std::size_t parameters = 0;
  std::size_t float_bytes = 0;
  std::size_t quantized_bytes = 0;
  nlohmann::json header;
  std::shared_ptr<const void> owner;
};

// Model files are recognized by their magic; anything else is read as a
// lexicon TSV. Throws Error(kIo) or Error(kFormat).
LoadedSystem LoadSystem(const std::string& path, DecodeMode mode = DecodeMode::kBestPath,
                        int beam_size = 0);

}  // namespace truecase

#endif  // TRUECASE_TOOLS_SYSTEMS_H_
