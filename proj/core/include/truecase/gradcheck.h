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

// Finite-difference verification of hand-written gradients.

#ifndef TRUECASE_GRADCHECK_H_
#define TRUECASE_GRADCHECK_H_

#include <cstdint>
#include <functional>
#include <string>

#include "truecase/nn.h"

namespace truecase {

struct GradCheckOptions {
  double epsilon = 1e-3;
  // Checks at most this many coordinates per parameter, sampled with
  // `seed`; 0 checks all of them.
  int max_coords_per_param = 0;
  std::uint64_t seed = 1;
};

struct GradCheckResult {
  double max_relative_error = 0;
  std::string worst_parameter;
  long worst_index = -1;
  double analytic = 0;
  double numeric = 0;
  std::size_t coordinates = 0;
};

// `loss` returns the loss and, when its argument is true, accumulates the
// reverse-mode gradient into the zeroed store. Numeric derivatives use the
// fourth-order central stencil
//   (-f(x+2h) + 8 f(x+h) - 8 f(x-h) + f(x-2h)) / 12h.
// The error of a coordinate is |g_ad - g_fd| / max(|g_ad|, |g_fd|, 1e-8).
// Throws Error(kNonFinite) if any evaluated loss is not finite.
GradCheckResult GradCheck(ParameterStore<double>* store,
                          const std::function<double(bool)>& loss,
                          const GradCheckOptions& options = {});

}  // namespace truecase

#endif  // TRUECASE_GRADCHECK_H_
