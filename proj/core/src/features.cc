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

#include "truecase/features.h"

#include <algorithm>

#include "truecase/error.h"

namespace truecase {

void FeatureConfig::Validate() const {
  if (max_ngram_order < 1) {
    throw Error(ErrorCode::kConfig, "max_ngram_order must be >= 1");
  }
  if (num_buckets < 1) throw Error(ErrorCode::kConfig, "num_buckets must be >= 1");
  if (embedding_dim < 1) {
    throw Error(ErrorCode::kConfig, "embedding_dim must be >= 1");
  }
}

NgramSet ExtractNgrams(std::string_view token, const FeatureConfig& config) {
  if (token.empty()) throw Error(ErrorCode::kEmptyToken, "empty token");
  // Padded symbols as UTF-8 pieces; the boundary is a single 0xFF byte.
  std::vector<std::string> symbols;
  symbols.emplace_back(1, kBoundaryByte);
  for (CodePoint cp : DecodeUtf8(token)) {
    std::string piece;
    AppendUtf8(cp, &piece);
    symbols.push_back(std::move(piece));
  }
  symbols.emplace_back(1, kBoundaryByte);

  const int padded = static_cast<int>(symbols.size());
  NgramSet out;
  for (int n = 1; n <= config.max_ngram_order; ++n) {
    for (int start = 0; start + n <= padded; ++start) {
      // Boundary-only n-grams (the bare markers) carry no information.
      if (n == 1 && (start == 0 || start == padded - 1)) continue;
      std::string gram;
      for (int k = start; k < start + n; ++k) gram += symbols[k];
      out.push_back(std::move(gram));
    }
  }
  if (config.dedupe_ngrams) {
    NgramSet unique;
    for (auto& g : out) {
      if (std::find(unique.begin(), unique.end(), g) == unique.end()) {
        unique.push_back(std::move(g));
      }
    }
    out = std::move(unique);
  }
  return out;
}

std::string DisplayNgram(std::string_view ngram) {
  std::string out;
  for (char c : ngram) {
    if (c == kBoundaryByte) {
      out += kBoundaryDisplay;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<int> NgramBuckets(std::string_view token,
                              const FeatureConfig& config) {
  std::vector<int> buckets;
  if (config.dedupe_ngrams) {
    for (const auto& g : ExtractNgrams(token, config)) {
      buckets.push_back(HashNgram(g, config.num_buckets));
    }
    return buckets;
  }
  if (token.empty()) throw Error(ErrorCode::kEmptyToken, "empty token");
  // Same enumeration as ExtractNgrams, hashing byte ranges of the padded
  // token in place.
  std::string padded;
  padded.reserve(token.size() + 2);
  padded.push_back(kBoundaryByte);
  std::vector<std::size_t> starts = {0};
  for (CodePoint cp : DecodeUtf8(token)) {
    starts.push_back(padded.size());
    AppendUtf8(cp, &padded);
  }
  starts.push_back(padded.size());
  padded.push_back(kBoundaryByte);
  starts.push_back(padded.size());

  const int symbols = static_cast<int>(starts.size()) - 1;
  const std::string_view bytes = padded;
  for (int n = 1; n <= config.max_ngram_order; ++n) {
    for (int start = 0; start + n <= symbols; ++start) {
      if (n == 1 && (start == 0 || start == symbols - 1)) continue;
      buckets.push_back(HashNgram(
          bytes.substr(starts[start], starts[start + n] - starts[start]),
          config.num_buckets));
    }
  }
  return buckets;
}

int CharBucket(CodePoint cp, int num_buckets) {
  std::string piece;
  AppendUtf8(cp, &piece);
  return HashNgram(piece, num_buckets);
}

template <typename T>
Eigen::Matrix<T, Eigen::Dynamic, 1> EmbedWord(
    std::string_view token,
    const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>& table,
    const FeatureConfig& config) {
  if (table.rows() != config.num_buckets ||
      table.cols() != config.embedding_dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "embedding table is " + std::to_string(table.rows()) + "x" +
                    std::to_string(table.cols()));
  }
  Eigen::Matrix<T, Eigen::Dynamic, 1> sum =
      Eigen::Matrix<T, Eigen::Dynamic, 1>::Zero(config.embedding_dim);
  for (int b : NgramBuckets(token, config)) sum += table.row(b).transpose();
  return sum;
}

template Eigen::Matrix<float, Eigen::Dynamic, 1> EmbedWord<float>(
    std::string_view, const Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic>&,
    const FeatureConfig&);
template Eigen::Matrix<double, Eigen::Dynamic, 1> EmbedWord<double>(
    std::string_view,
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic>&,
    const FeatureConfig&);

}  // namespace truecase
