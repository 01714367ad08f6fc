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

#include "truecase/adam.h"

#include <cmath>

#include "truecase/error.h"

namespace truecase {

template <typename T>
Adam<T>::Adam(ParameterStore<T>* store, const AdamConfig& config)
    : store_(store), config_(config) {
  for (std::size_t i = 0; i < store->size(); ++i) {
    const auto& v = (*store)[i].value;
    m_.push_back(Matrix<T>::Zero(v.rows(), v.cols()));
    v_.push_back(Matrix<T>::Zero(v.rows(), v.cols()));
  }
}

template <typename T>
void Adam<T>::Step() {
  for (std::size_t i = 0; i < store_->size(); ++i) {
    if (!(*store_)[i].grad.allFinite()) {
      throw Error(ErrorCode::kNonFinite,
                  "gradient of " + (*store_)[i].name + " is not finite");
    }
  }
  ++t_;
  const double b1 = config_.beta1;
  const double b2 = config_.beta2;
  const T c1 = static_cast<T>(1.0 - std::pow(b1, static_cast<double>(t_)));
  const T c2 = static_cast<T>(1.0 - std::pow(b2, static_cast<double>(t_)));
  const T lr = static_cast<T>(config_.learning_rate);
  const T eps = static_cast<T>(config_.epsilon);
  for (std::size_t i = 0; i < store_->size(); ++i) {
    auto& p = (*store_)[i];
    auto m = m_[i].array();
    auto v = v_[i].array();
    const auto g = p.grad.array();
    m = static_cast<T>(b1) * m + static_cast<T>(1 - b1) * g;
    v = static_cast<T>(b2) * v + static_cast<T>(1 - b2) * g.square();
    p.value.array() -= lr * (m / c1) / ((v / c2).sqrt() + eps);
  }
}

template <typename T>
double ClipGradNorm(ParameterStore<T>* store, double max_norm) {
  const double norm = store->GradNorm();
  if (norm > max_norm && norm > 0) {
    const T s = static_cast<T>(max_norm / norm);
    for (std::size_t i = 0; i < store->size(); ++i) (*store)[i].grad *= s;
  }
  return norm;
}

template class Adam<float>;
template class Adam<double>;
template double ClipGradNorm<float>(ParameterStore<float>*, double);
template double ClipGradNorm<double>(ParameterStore<double>*, double);

}  // namespace truecase
