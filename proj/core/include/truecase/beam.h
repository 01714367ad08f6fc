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

// Beam search over binary label sequences.

#ifndef TRUECASE_BEAM_H_
#define TRUECASE_BEAM_H_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace truecase {

struct LabelHypothesis {
  std::vector<std::uint8_t> labels;
  double score = 0;
};

// Orders by score, best first. Exact ties go to the lexicographically
// smaller label sequence, i.e. the one that picks label 0 (SELF or L) first.
inline bool BetterHypothesis(const LabelHypothesis& a, const LabelHypothesis& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.labels < b.labels;
}

// Runs a beam of width `beam_size` over `length` binary decisions.
//
// `step(state, position, prev_label)` returns {next_state, log_probs} where
// prev_label is -1 at position 0. Both children of a hypothesis share
// next_state. Children with a log-probability of -inf are never expanded,
// so forced positions keep a single continuation.
template <typename State, typename StepFn>
std::vector<LabelHypothesis> BinaryBeamSearch(int length, int beam_size,
                                              State initial, StepFn&& step) {
  struct Node {
    std::shared_ptr<const State> state;
    LabelHypothesis hyp;
  };
  std::vector<Node> beam;
  beam.push_back({std::make_shared<const State>(std::move(initial)), {}});
  std::vector<Node> next;
  for (int pos = 0; pos < length; ++pos) {
    next.clear();
    for (const Node& node : beam) {
      const int prev = pos == 0 ? -1 : node.hyp.labels.back();
      auto [state, logp] = step(*node.state, pos, prev);
      auto shared = std::make_shared<const State>(std::move(state));
      for (int label = 0; label < 2; ++label) {
        const double lp = static_cast<double>(logp[label]);
        if (std::isinf(lp) && lp < 0) continue;
        Node child{shared, node.hyp};
        child.hyp.labels.push_back(static_cast<std::uint8_t>(label));
        child.hyp.score += lp;
        next.push_back(std::move(child));
      }
    }
    std::sort(next.begin(), next.end(), [](const Node& a, const Node& b) {
      return BetterHypothesis(a.hyp, b.hyp);
    });
    if (static_cast<int>(next.size()) > beam_size) next.resize(beam_size);
    std::swap(beam, next);
  }
  std::vector<LabelHypothesis> out;
  out.reserve(beam.size());
  for (auto& node : beam) out.push_back(std::move(node.hyp));
  return out;
}

}  // namespace truecase

#endif  // TRUECASE_BEAM_H_
