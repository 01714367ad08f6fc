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

// Post-training per-tensor symmetric int8 quantization.

#ifndef TRUECASE_QUANTIZE_H_
#define TRUECASE_QUANTIZE_H_

#include <cstdint>
#include <vector>

#include "truecase/nn.h"

namespace truecase {

struct QuantizedTensor {
  long rows = 0;
  long cols = 0;
  // Column-major, like the source matrix.
  std::vector<std::int8_t> values;
  float scale = 1.0f;
};

// scale = max|v| / 127 and q = round(v / scale). An all-zero tensor gets
// scale 1. Throws Error(kNonFinite) on non-finite input.
template <typename T>
QuantizedTensor Quantize(const Matrix<T>& m);

template <typename T>
Matrix<T> Dequantize(const QuantizedTensor& q);

}  // namespace truecase

#endif  // TRUECASE_QUANTIZE_H_
