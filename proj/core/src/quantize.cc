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

#include "truecase/quantize.h"

#include <algorithm>
#include <cmath>

#include "truecase/error.h"

namespace truecase {

template <typename T>
QuantizedTensor Quantize(const Matrix<T>& m) {
  if (!m.allFinite()) throw Error(ErrorCode::kNonFinite, "cannot quantize");
  QuantizedTensor q;
  q.rows = m.rows();
  q.cols = m.cols();
  const double max_abs =
      m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
  q.scale = max_abs > 0 ? static_cast<float>(max_abs / 127.0) : 1.0f;
  q.values.resize(m.size());
  const T* data = m.data();
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const double r = std::nearbyint(static_cast<double>(data[i]) / q.scale);
    q.values[i] = static_cast<std::int8_t>(std::clamp(r, -127.0, 127.0));
  }
  return q;
}

template <typename T>
Matrix<T> Dequantize(const QuantizedTensor& q) {
  Matrix<T> m(q.rows, q.cols);
  T* data = m.data();
  for (std::size_t i = 0; i < q.values.size(); ++i) {
    data[i] = static_cast<T>(q.values[i]) * static_cast<T>(q.scale);
  }
  return m;
}

template QuantizedTensor Quantize<float>(const Matrix<float>&);
template QuantizedTensor Quantize<double>(const Matrix<double>&);
template Matrix<float> Dequantize<float>(const QuantizedTensor&);
template Matrix<double> Dequantize<double>(const QuantizedTensor&);

}  // namespace truecase
