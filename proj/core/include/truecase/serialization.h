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

// Versioned model container.
//
//   "TCASEMDL"  u32 version  u64 header_len  header (canonical JSON)
//   u32 tensor_count  { u64 blob_len  blob }*
//
// blob: u8 dtype, 3 zero bytes, u32 rows, u32 cols, [f32 scale if int8],
// then column-major values. All integers and floats are little-endian, so
// identical parameters give identical bytes on every platform.

#ifndef TRUECASE_SERIALIZATION_H_
#define TRUECASE_SERIALIZATION_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "truecase/nn.h"
#include "truecase/quantize.h"

namespace truecase {

inline constexpr std::string_view kModelMagic = "TCASEMDL";
inline constexpr std::uint32_t kModelFormatVersion = 1;

enum class DType : std::uint8_t { kF32 = 1, kF64 = 2, kI8 = 3 };

struct StoredTensor {
  DType dtype = DType::kF32;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  float scale = 1.0f;
  // Raw little-endian element bytes.
  std::string data;

  template <typename T>
  static StoredTensor FromMatrix(const Matrix<T>& m, DType dtype);
  static StoredTensor FromQuantized(const QuantizedTensor& q);

  // Converts to T, dequantizing int8 data.
  template <typename T>
  Matrix<T> ToMatrix() const;
};

struct ModelFile {
  nlohmann::json header;
  std::vector<StoredTensor> tensors;
};

std::string SerializeModelFile(const ModelFile& file);
// Throws Error(kFormat) with the byte offset of the first problem.
ModelFile ParseModelFile(std::string_view bytes);

// Throw Error(kIo) when the file cannot be written or read.
void WriteModelFile(const std::string& path, const ModelFile& file);
ModelFile ReadModelFile(const std::string& path);

// Reads a whole file. Throws Error(kIo).
std::string ReadFileBytes(const std::string& path);

}  // namespace truecase

#endif  // TRUECASE_SERIALIZATION_H_
