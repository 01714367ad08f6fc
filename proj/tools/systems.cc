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

#include "systems.h"

#include "truecase/baseline.h"
#include "truecase/char_reference.h"
#include "truecase/error.h"
#include "truecase/serialization.h"

namespace truecase {

LoadedSystem LoadSystem(const std::string& path, DecodeMode mode, int beam_size) {
  const std::string bytes = ReadFileBytes(path);
  LoadedSystem sys;
  if (bytes.compare(0, kModelMagic.size(), kModelMagic) != 0) {
    auto lex = std::make_shared<CaseLexicon>(CaseLexicon::FromTsv(bytes));
    sys.kind = "lexicon";
    sys.run = [lex](const Sentence& s) { return BaselineTruecase(*lex, s); };
    sys.parameters = lex->size();
    sys.float_bytes = bytes.size();
    sys.quantized_bytes = bytes.size();
    sys.header = {{"format", "lexicon"}, {"entries", lex->size()}};
    sys.owner = lex;
    return sys;
  }
  const ModelFile file = ParseModelFile(bytes);
  sys.header = file.header;
  const std::string format = file.header.value("format", "");
  if (format == "truecase-char") {
    auto model = std::make_shared<CharTagger<float>>(CharTagger<float>::FromModelFile(file));
    sys.kind = "char";
    sys.run = [model, beam_size](const Sentence& s) { return model->Truecase(s, beam_size); };
    sys.parameters = model->ParameterCount();
    sys.float_bytes = SerializeModelFile(model->ToModelFile(DType::kF32)).size();
    sys.quantized_bytes = SerializeModelFile(model->ToModelFile(DType::kI8)).size();
    sys.owner = model;
    return sys;
  }
  auto model = std::make_shared<HierModel<float>>(HierModel<float>::FromModelFile(file));
  sys.kind = "hier";
  sys.run = [model, mode, beam_size](const Sentence& s) {
    return model->Truecase(s, mode, beam_size);
  };
  sys.parameters = model->ParameterCount();
  sys.float_bytes = SerializeModelFile(model->ToModelFile(DType::kF32)).size();
  sys.quantized_bytes = SerializeModelFile(model->ToModelFile(DType::kI8)).size();
  sys.owner = model;
  return sys;
}

}  // namespace truecase
