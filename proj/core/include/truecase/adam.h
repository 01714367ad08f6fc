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

#ifndef TRUECASE_ADAM_H_
#define TRUECASE_ADAM_H_

#include <cstdint>
#include <vector>

#include "truecase/nn.h"

namespace truecase {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Adam over every parameter of a store. Moments live alongside the store and
// must be created after all parameters have been added.
template <typename T>
class Adam {
 public:
  Adam(ParameterStore<T>* store, const AdamConfig& config);

  // Applies one update from the accumulated gradients. Throws
  // Error(kNonFinite) before touching anything if a gradient is not finite.
  void Step();

  std::int64_t step_count() const { return t_; }
  const AdamConfig& config() const { return config_; }
  void set_learning_rate(double lr) { config_.learning_rate = lr; }

 private:
  ParameterStore<T>* store_;
  AdamConfig config_;
  std::int64_t t_ = 0;
  std::vector<Matrix<T>> m_;
  std::vector<Matrix<T>> v_;
};

// Rescales gradients so their global L2 norm is at most `max_norm`. Returns
// the norm before clipping.
template <typename T>
double ClipGradNorm(ParameterStore<T>* store, double max_norm);

}  // namespace truecase

#endif  // TRUECASE_ADAM_H_
