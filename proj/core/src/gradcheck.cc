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

#include "truecase/gradcheck.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "truecase/error.h"
#include "truecase/rng.h"

namespace truecase {
namespace {

double Checked(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::kNonFinite, "loss is not finite");
  return v;
}

}  // namespace

GradCheckResult GradCheck(ParameterStore<double>* store,
                          const std::function<double(bool)>& loss,
                          const GradCheckOptions& options) {
  GradCheckResult result;
  store->ZeroGrad();
  Checked(loss(true));
  Rng rng(options.seed);
  const double h = options.epsilon;
  for (std::size_t p = 0; p < store->size(); ++p) {
    Parameter<double>& param = (*store)[p];
    const long n = static_cast<long>(param.value.size());
    std::vector<long> coords(n);
    std::iota(coords.begin(), coords.end(), 0L);
    if (options.max_coords_per_param > 0 && n > options.max_coords_per_param) {
      rng.Shuffle(coords.begin(), coords.end());
      coords.resize(options.max_coords_per_param);
      std::sort(coords.begin(), coords.end());
    }
    double* x = param.value.data();
    for (long k : coords) {
      const double saved = x[k];
      auto at = [&](double delta) {
        x[k] = saved + delta;
        return Checked(loss(false));
      };
      const double numeric =
          (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
      x[k] = saved;
      const double analytic = param.grad.data()[k];
      const double denom =
          std::max({std::abs(analytic), std::abs(numeric), 1e-8});
      const double err = std::abs(analytic - numeric) / denom;
      ++result.coordinates;
      if (err > result.max_relative_error) {
        result.max_relative_error = err;
        result.worst_parameter = param.name;
        result.worst_index = k;
        result.analytic = analytic;
        result.numeric = numeric;
      }
    }
  }
  return result;
}

}  // namespace truecase
