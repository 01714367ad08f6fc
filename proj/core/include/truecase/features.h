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

// Hashed character n-gram features. A word is the sum of the embeddings of
// the buckets its boundary-padded character n-grams hash to; a single
// character is the embedding of its unigram bucket.

#ifndef TRUECASE_FEATURES_H_
#define TRUECASE_FEATURES_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "truecase/unicode.h"

namespace truecase {

struct FeatureConfig {
  int max_ngram_order = 3;
  int num_buckets = 5000;
  int embedding_dim = 128;
  // Count repeated n-grams once per word instead of once per occurrence.
  bool dedupe_ngrams = false;

  // Throws Error(kConfig).
  void Validate() const;
  friend bool operator==(const FeatureConfig&, const FeatureConfig&) = default;
};

// The word boundary marker. Encoded as byte 0xFF when hashed, which never
// occurs in valid UTF-8.
inline constexpr char kBoundaryByte = '\xFF';
inline constexpr std::string_view kBoundaryDisplay = "<s>";

// N-grams in UTF-8 with kBoundaryByte marking the word boundaries, in order
// of increasing length and then position.
using NgramSet = std::vector<std::string>;

// Throws Error(kEmptyToken).
NgramSet ExtractNgrams(std::string_view token, const FeatureConfig& config);

// Renders kBoundaryByte as "<s>".
std::string DisplayNgram(std::string_view ngram);

// 64-bit FNV-1a.
std::uint64_t Fnv1a64(std::string_view bytes);

inline int HashNgram(std::string_view ngram, int num_buckets) {
  return static_cast<int>(Fnv1a64(ngram) %
                          static_cast<std::uint64_t>(num_buckets));
}

// Bucket ids of ExtractNgrams(token) (with multiplicity unless deduped).
std::vector<int> NgramBuckets(std::string_view token,
                              const FeatureConfig& config);

// Bucket of a single character, i.e. its unigram.
int CharBucket(CodePoint cp, int num_buckets);

// Sums table rows over the token's n-gram buckets. `table` is
// num_buckets x embedding_dim. Throws Error(kDimensionMismatch).
template <typename T>
Eigen::Matrix<T, Eigen::Dynamic, 1> EmbedWord(
    std::string_view token,
    const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>& table,
    const FeatureConfig& config);

}  // namespace truecase

#endif  // TRUECASE_FEATURES_H_
