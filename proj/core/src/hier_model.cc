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

#include "truecase/hier_model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "truecase/error.h"
#include "truecase/features.h"
#include "truecase/rng.h"

namespace truecase {
namespace {

constexpr const char* kFormatName = "truecase-hier";

template <typename T>
constexpr T NegInf() {
  return -std::numeric_limits<T>::infinity();
}

template <typename T>
std::array<T, 2> LogProbs(const Linear<T>& out, const Vector<T>& h) {
  const Matrix<T>& w = out.w()->value;
  const Matrix<T>& b = out.b()->value;
  return LogSoftmax2<T>(w.row(0).dot(h) + b(0, 0), w.row(1).dot(h) + b(1, 0));
}

double LogAddExp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (std::isinf(b)) return a;
  return a + std::log1p(std::exp(b - a));
}

}  // namespace

DecodeMode ParseDecodeMode(std::string_view name) {
  if (name == "best-path") return DecodeMode::kBestPath;
  if (name == "full-beam") return DecodeMode::kFullBeam;
  throw Error(ErrorCode::kConfig, "unknown decode mode '" + std::string(name) + "'");
}

const char* DecodeModeName(DecodeMode mode) {
  return mode == DecodeMode::kBestPath ? "best-path" : "full-beam";
}

template <typename T>
HierModel<T>::HierModel(const ModelConfig& config) : config_(config) {
  config_.Validate();
  const int d = config_.input_embedding_size;
  const int o = config_.output_embedding_size;
  const int e = config_.encoder_cells;
  const int h = config_.decoder_cells;
  const int layers = config_.forward_encoder_layers;
  embedding_ = store_.Add("embedding", d, config_.num_buckets);
  word_encoder_ = BiEncoder<T>(&store_, "word.encoder", d, e, layers);
  word_label_embedding_ = store_.Add("word.label_embedding", o, 3);
  word_decoder_ =
      GruStack<T>(&store_, "word.decoder", e + o, h, config_.decoder_layers);
  word_output_ = Linear<T>(&store_, "word.output", h, 2);
  char_encoder_ = BiEncoder<T>(&store_, "char.encoder", d, e, layers);
  context_projection_ = Linear<T>(&store_, "char.context", layers * e, e);
  char_label_embedding_ = store_.Add("char.label_embedding", o, 3);
  char_decoder_ =
      GruStack<T>(&store_, "char.decoder", 2 * e + o, h, config_.decoder_layers);
  char_output_ = Linear<T>(&store_, "char.output", h, 2);
}

template <typename T>
void HierModel<T>::InitUniform(std::uint64_t seed, double range) {
  frozen_.reset();
  Rng rng(seed);
  store_.InitUniform(&rng, range);
}

template <typename T>
typename HierModel<T>::LabelProjections HierModel<T>::ComputeLabelProjections()
    const {
  const int o = config_.output_embedding_size;
  LabelProjections p;
  p.word = Product<T>(word_decoder_.layer(0).w()->value.rightCols(o),
                      word_label_embedding_->value);
  p.chars = Product<T>(char_decoder_.layer(0).w()->value.rightCols(o),
                       char_label_embedding_->value);
  return p;
}

template <typename T>
void HierModel<T>::Freeze() {
  frozen_ = std::make_shared<const LabelProjections>(ComputeLabelProjections());
}

template <typename T>
Matrix<T> HierModel<T>::WordInputs(
    const Sentence& lower, std::vector<std::vector<int>>* buckets) const {
  const FeatureConfig features = config_.features();
  Matrix<T> x = Matrix<T>::Zero(config_.input_embedding_size, lower.size());
  for (std::size_t i = 0; i < lower.size(); ++i) {
    std::vector<int> b = NgramBuckets(lower[i], features);
    for (int k : b) x.col(i) += embedding_->value.col(k);
    if (buckets != nullptr) buckets->push_back(std::move(b));
  }
  return x;
}

template <typename T>
Matrix<T> HierModel<T>::CharInputs(const std::vector<CodePoint>& chars,
                                   std::vector<int>* buckets) const {
  Matrix<T> x(config_.input_embedding_size, chars.size());
  for (std::size_t j = 0; j < chars.size(); ++j) {
    const int b = CharBucket(chars[j], config_.num_buckets);
    x.col(j) = embedding_->value.col(b);
    if (buckets != nullptr) buckets->push_back(b);
  }
  return x;
}

template <typename T>
typename HierModel<T>::Encoding HierModel<T>::Encode(const Sentence& lower) const {
  if (lower.empty()) throw Error(ErrorCode::kEmptySentence, "empty sentence");
  const int e = config_.encoder_cells;
  Encoding enc;
  enc.layers = word_encoder_.Forward(WordInputs(lower, nullptr), nullptr);
  const auto& w0 = word_decoder_.layer(0);
  enc.word_proj = Product<T>(w0.w()->value.leftCols(e), enc.layers.back());
  enc.word_proj.colwise() += w0.b()->value.col(0);
  if (frozen_ != nullptr) {
    enc.word_label_proj = frozen_->word;
    enc.char_label_proj = frozen_->chars;
  } else {
    LabelProjections p = ComputeLabelProjections();
    enc.word_label_proj = std::move(p.word);
    enc.char_label_proj = std::move(p.chars);
  }
  return enc;
}

template <typename T>
Vector<T> HierModel<T>::WordContext(const Encoding& enc, std::size_t i) const {
  const int e = config_.encoder_cells;
  Vector<T> ctx(static_cast<Eigen::Index>(enc.layers.size()) * e);
  for (std::size_t k = 0; k < enc.layers.size(); ++k) {
    ctx.segment(k * e, e) = enc.layers[k].col(i);
  }
  return ctx;
}

template <typename T>
Matrix<T> HierModel<T>::CharProjection(const std::vector<CodePoint>& chars,
                                       const Vector<T>& context) const {
  const int e = config_.encoder_cells;
  if (context.size() != context_projection_.w()->value.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "word context size");
  }
  const std::vector<Matrix<T>> layers =
      char_encoder_.Forward(CharInputs(chars, nullptr), nullptr);
  const Vector<T> ctx_proj = context_projection_.Forward(context).array().tanh();
  const auto& w0 = char_decoder_.layer(0).w()->value;
  Vector<T> fixed = w0.middleCols(e, e) * ctx_proj;
  fixed += char_decoder_.layer(0).b()->value.col(0);
  Matrix<T> proj = Product<T>(w0.leftCols(e), layers.back());
  proj.colwise() += fixed;
  return proj;
}

template <typename T>
std::array<T, 2> HierModel<T>::WordTagLogProbs(
    const Sentence& lower, const std::vector<WordLabel>& prefix) const {
  if (prefix.size() >= lower.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "word label prefix too long");
  }
  const Encoding enc = Encode(lower);
  std::vector<Vector<T>> state(word_decoder_.layers(),
                               Vector<T>::Zero(config_.decoder_cells));
  int prev = kStartLabel;
  for (std::size_t i = 0; i <= prefix.size(); ++i) {
    word_decoder_.StepProjected(
        enc.word_proj.col(i) + enc.word_label_proj.col(prev), &state);
    if (i < prefix.size()) prev = static_cast<int>(prefix[i]);
  }
  return LogProbs(word_output_, state.back());
}

template <typename T>
std::array<T, 2> HierModel<T>::CharTransduceLogProbs(
    const Sentence& lower, std::size_t word,
    const std::vector<CharLabel>& prefix) const {
  if (word >= lower.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "word index " + std::to_string(word));
  }
  const Encoding enc = Encode(lower);
  return CharTransduceLogProbs(lower[word], WordContext(enc, word), prefix);
}

template <typename T>
std::array<T, 2> HierModel<T>::CharTransduceLogProbs(
    std::string_view lower_word, const Vector<T>& context,
    const std::vector<CharLabel>& prefix) const {
  const std::vector<CodePoint> chars = DecodeUtf8(lower_word);
  if (prefix.size() >= chars.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "char label prefix too long");
  }
  if (!IsCasedPosition(chars[prefix.size()])) return {T(0), NegInf<T>()};
  const Matrix<T> proj = CharProjection(chars, context);
  const Matrix<T> label_proj = char_decoder_.layer(0).w()->value.rightCols(
                                   config_.output_embedding_size) *
                               char_label_embedding_->value;
  std::vector<Vector<T>> state(char_decoder_.layers(),
                               Vector<T>::Zero(config_.decoder_cells));
  int prev = kStartLabel;
  for (std::size_t j = 0; j <= prefix.size(); ++j) {
    char_decoder_.StepProjected(proj.col(j) + label_proj.col(prev), &state);
    if (j < prefix.size()) prev = static_cast<int>(prefix[j]);
  }
  return LogProbs(char_output_, state.back());
}

template <typename T>
double HierModel<T>::ScoreWordLabels(const Sentence& lower,
                                     const std::vector<WordLabel>& labels) const {
  if (labels.size() != lower.size()) {
    throw Error(ErrorCode::kLengthMismatch, "word label count");
  }
  const Encoding enc = Encode(lower);
  const int e = config_.encoder_cells;
  const int o = config_.output_embedding_size;
  const Eigen::Index n = static_cast<Eigen::Index>(lower.size());
  Matrix<T> in(e + o, n);
  in.topRows(e) = enc.layers.back();
  for (Eigen::Index i = 0; i < n; ++i) {
    const int prev = i == 0 ? kStartLabel : static_cast<int>(labels[i - 1]);
    in.col(i).tail(o) = word_label_embedding_->value.col(prev);
  }
  const Matrix<T> logits =
      word_output_.Forward(word_decoder_.Forward(in, nullptr));
  double score = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    score += LogSoftmax2<T>(logits(0, i), logits(1, i))[static_cast<int>(labels[i])];
  }
  return score;
}

template <typename T>
double HierModel<T>::ScoreCharLabels(const Sentence& lower, std::size_t word,
                                     const std::vector<CharLabel>& labels) const {
  if (word >= lower.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "word index " + std::to_string(word));
  }
  const std::vector<CodePoint> chars = DecodeUtf8(lower[word]);
  if (labels.size() != chars.size()) {
    throw Error(ErrorCode::kLengthMismatch, "char label count");
  }
  const Encoding enc = Encode(lower);
  const Vector<T> ctx = WordContext(enc, word);
  const int e = config_.encoder_cells;
  const int o = config_.output_embedding_size;
  const Eigen::Index m = static_cast<Eigen::Index>(chars.size());
  Matrix<T> in(2 * e + o, m);
  in.topRows(e) = char_encoder_.Forward(CharInputs(chars, nullptr), nullptr).back();
  const Vector<T> ctx_proj = context_projection_.Forward(ctx).array().tanh();
  for (Eigen::Index j = 0; j < m; ++j) {
    in.col(j).segment(e, e) = ctx_proj;
    const int prev = j == 0 ? kStartLabel : static_cast<int>(labels[j - 1]);
    in.col(j).tail(o) = char_label_embedding_->value.col(prev);
  }
  const Matrix<T> logits =
      char_output_.Forward(char_decoder_.Forward(in, nullptr));
  double score = 0;
  for (Eigen::Index j = 0; j < m; ++j) {
    if (!IsCasedPosition(chars[j])) {
      if (labels[j] == CharLabel::kUpper) return -std::numeric_limits<double>::infinity();
      continue;
    }
    score += LogSoftmax2<T>(logits(0, j), logits(1, j))[static_cast<int>(labels[j])];
  }
  return score;
}

template <typename T>
T HierModel<T>::Loss(const LabeledPair& pair, bool backward) const {
  const Sentence& lower = pair.lower;
  if (lower.empty()) throw Error(ErrorCode::kEmptySentence, "empty sentence");
  const int e = config_.encoder_cells;
  const int o = config_.output_embedding_size;
  const int layers = config_.forward_encoder_layers;
  const Eigen::Index n = static_cast<Eigen::Index>(lower.size());

  std::vector<std::vector<int>> word_buckets;
  typename BiEncoder<T>::Cache enc_cache;
  const std::vector<Matrix<T>> enc_out = word_encoder_.Forward(
      WordInputs(lower, &word_buckets), backward ? &enc_cache : nullptr);
  std::vector<Matrix<T>> d_enc;
  if (backward) {
    for (const auto& m : enc_out) d_enc.push_back(Matrix<T>::Zero(m.rows(), m.cols()));
  }

  // Word level.
  Matrix<T> dec_in(e + o, n);
  dec_in.topRows(e) = enc_out.back();
  std::vector<std::uint8_t> targets(n), mask(n, 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int prev = i == 0 ? kStartLabel : static_cast<int>(pair.word_labels[i - 1]);
    dec_in.col(i).tail(o) = word_label_embedding_->value.col(prev);
    targets[i] = static_cast<std::uint8_t>(pair.word_labels[i]);
  }
  typename GruStack<T>::Cache dec_cache;
  const Matrix<T> dec_out =
      word_decoder_.Forward(dec_in, backward ? &dec_cache : nullptr);
  Matrix<T> d_logits;
  T loss = MaskedCrossEntropy(word_output_.Forward(dec_out), targets, mask,
                              backward ? &d_logits : nullptr);
  if (backward) {
    const Matrix<T> d_dec_in = word_decoder_.Backward(
        dec_cache, word_output_.Backward(dec_out, d_logits));
    d_enc.back() += d_dec_in.topRows(e);
    for (Eigen::Index i = 0; i < n; ++i) {
      const int prev = i == 0 ? kStartLabel : static_cast<int>(pair.word_labels[i - 1]);
      word_label_embedding_->grad.col(prev) += d_dec_in.col(i).tail(o);
    }
  }

  // Character level, gold-OTHER words only.
  for (Eigen::Index i = 0; i < n; ++i) {
    if (pair.word_labels[i] != WordLabel::kOther) continue;
    const std::vector<CodePoint> chars = DecodeUtf8(lower[i]);
    const auto& labels = pair.char_labels[i];
    const Eigen::Index m = static_cast<Eigen::Index>(chars.size());
    std::vector<int> char_buckets;
    typename BiEncoder<T>::Cache cenc_cache;
    const std::vector<Matrix<T>> cenc = char_encoder_.Forward(
        CharInputs(chars, &char_buckets), backward ? &cenc_cache : nullptr);
    Vector<T> ctx(layers * e);
    for (int k = 0; k < layers; ++k) ctx.segment(k * e, e) = enc_out[k].col(i);
    const Vector<T> ctx_proj = context_projection_.Forward(ctx).array().tanh();

    Matrix<T> cin(2 * e + o, m);
    cin.topRows(e) = cenc.back();
    std::vector<std::uint8_t> ctargets(m), cmask(m);
    for (Eigen::Index j = 0; j < m; ++j) {
      cin.col(j).segment(e, e) = ctx_proj;
      const int prev = j == 0 ? kStartLabel : static_cast<int>(labels[j - 1]);
      cin.col(j).tail(o) = char_label_embedding_->value.col(prev);
      ctargets[j] = static_cast<std::uint8_t>(labels[j]);
      cmask[j] = IsCasedPosition(chars[j]) ? 1 : 0;
    }
    typename GruStack<T>::Cache cdec_cache;
    const Matrix<T> cdec =
        char_decoder_.Forward(cin, backward ? &cdec_cache : nullptr);
    Matrix<T> cd_logits;
    loss += MaskedCrossEntropy(char_output_.Forward(cdec), ctargets, cmask,
                               backward ? &cd_logits : nullptr);
    if (!backward) continue;

    const Matrix<T> d_cin = char_decoder_.Backward(
        cdec_cache, char_output_.Backward(cdec, cd_logits));
    for (Eigen::Index j = 0; j < m; ++j) {
      const int prev = j == 0 ? kStartLabel : static_cast<int>(labels[j - 1]);
      char_label_embedding_->grad.col(prev) += d_cin.col(j).tail(o);
    }
    const Matrix<T> d_pre =
        (d_cin.middleRows(e, e).rowwise().sum().array() *
         (T(1) - ctx_proj.array().square()))
            .matrix();
    const Matrix<T> d_ctx = context_projection_.Backward(ctx, d_pre);
    for (int k = 0; k < layers; ++k) {
      d_enc[k].col(i) += d_ctx.col(0).segment(k * e, e);
    }
    std::vector<Matrix<T>> d_cenc(cenc.size());
    d_cenc.back() = d_cin.topRows(e);
    const Matrix<T> d_chars = char_encoder_.Backward(cenc_cache, std::move(d_cenc));
    for (Eigen::Index j = 0; j < m; ++j) {
      embedding_->grad.col(char_buckets[j]) += d_chars.col(j);
    }
  }

  if (backward) {
    const Matrix<T> d_words = word_encoder_.Backward(enc_cache, std::move(d_enc));
    for (Eigen::Index i = 0; i < n; ++i) {
      for (int b : word_buckets[i]) embedding_->grad.col(b) += d_words.col(i);
    }
  }
  return loss;
}

template <typename T>
T HierModel<T>::SentenceLoss(const LabeledPair& pair) const {
  return Loss(pair, false);
}

template <typename T>
T HierModel<T>::AccumulateGradients(const LabeledPair& pair) {
  return Loss(pair, true);
}

template <typename T>
std::vector<LabelHypothesis> HierModel<T>::BeamSearchWords(const Sentence& lower,
                                                           int beam_size) const {
  return BeamSearchWords(Encode(lower), beam_size);
}

template <typename T>
std::vector<LabelHypothesis> HierModel<T>::BeamSearchWords(const Encoding& enc,
                                                           int beam_size) const {
  if (beam_size <= 0) beam_size = config_.beam_size;
  using State = std::vector<Vector<T>>;
  State init(word_decoder_.layers(), Vector<T>::Zero(config_.decoder_cells));
  const int n = static_cast<int>(enc.word_proj.cols());
  return BinaryBeamSearch(
      n, beam_size, std::move(init),
      [&](const State& s, int pos, int prev) {
        State next = s;
        word_decoder_.StepProjected(
            enc.word_proj.col(pos) +
                enc.word_label_proj.col(prev < 0 ? kStartLabel : prev),
            &next);
        const auto lp = LogProbs(word_output_, next.back());
        return std::make_pair(std::move(next), lp);
      });
}

template <typename T>
std::vector<LabelHypothesis> HierModel<T>::BeamSearchChars(const Sentence& lower,
                                                           std::size_t word,
                                                           int beam_size) const {
  if (word >= lower.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "word index " + std::to_string(word));
  }
  return BeamSearchChars(Encode(lower), lower[word], word, beam_size);
}

template <typename T>
std::vector<LabelHypothesis> HierModel<T>::BeamSearchChars(
    const Encoding& enc, std::string_view lower_word, std::size_t word,
    int beam_size) const {
  if (beam_size <= 0) beam_size = config_.beam_size;
  const std::vector<CodePoint> chars = DecodeUtf8(lower_word);
  const bool any_cased = std::any_of(chars.begin(), chars.end(), IsCasedPosition);
  if (!any_cased) {
    return {LabelHypothesis{std::vector<std::uint8_t>(chars.size(), 0), 0.0}};
  }
  const Matrix<T> proj = CharProjection(chars, WordContext(enc, word));
  using State = std::vector<Vector<T>>;
  State init(char_decoder_.layers(), Vector<T>::Zero(config_.decoder_cells));
  return BinaryBeamSearch(
      static_cast<int>(chars.size()), beam_size, std::move(init),
      [&](const State& s, int pos, int prev) {
        State next = s;
        char_decoder_.StepProjected(
            proj.col(pos) + enc.char_label_proj.col(prev < 0 ? kStartLabel : prev),
            &next);
        std::array<T, 2> lp{T(0), NegInf<T>()};
        if (IsCasedPosition(chars[pos])) lp = LogProbs(char_output_, next.back());
        return std::make_pair(std::move(next), lp);
      });
}

template <typename T>
TruecaseResult HierModel<T>::DecodeChunk(const Sentence& lower, DecodeMode mode,
                                         int beam_size) const {
  const Encoding enc = Encode(lower);
  const std::vector<LabelHypothesis> words = BeamSearchWords(enc, beam_size);
  const std::size_t n = lower.size();

  // Character decoding does not depend on the word labels, so each word is
  // decoded at most once across the beam.
  std::vector<std::string> recased(n);
  std::vector<double> char_score(n, 0);
  std::vector<bool> done(n, false);
  auto recase = [&](std::size_t i) {
    if (done[i]) return;
    done[i] = true;
    const auto top = BeamSearchChars(enc, lower[i], i, beam_size).front();
    std::vector<CodePoint> cps = DecodeUtf8(lower[i]);
    for (std::size_t j = 0; j < cps.size(); ++j) {
      if (top.labels[j]) cps[j] = ToUpper(cps[j]);
    }
    recased[i] = EncodeUtf8(cps);
    char_score[i] = top.score;
  };

  auto realize = [&](const LabelHypothesis& hyp, double* score) {
    std::vector<std::string> tokens;
    tokens.reserve(n);
    *score = hyp.score;
    for (std::size_t i = 0; i < n; ++i) {
      if (hyp.labels[i] == 0) {
        tokens.push_back(lower[i]);
      } else {
        recase(i);
        tokens.push_back(recased[i]);
        *score += char_score[i];
      }
    }
    return tokens;
  };

  TruecaseResult result;
  if (mode == DecodeMode::kBestPath) {
    result.output = Sentence::FromTokens(realize(words.front(), &result.score));
    return result;
  }
  // Full beam: sum the probability of every hypothesis yielding the same
  // output and keep the best total; ties keep the earlier beam entry.
  std::vector<std::vector<std::string>> outputs;
  std::vector<double> totals;
  for (const auto& hyp : words) {
    double score = 0;
    auto tokens = realize(hyp, &score);
    auto it = std::find(outputs.begin(), outputs.end(), tokens);
    if (it == outputs.end()) {
      outputs.push_back(std::move(tokens));
      totals.push_back(score);
    } else {
      double& t = totals[it - outputs.begin()];
      t = LogAddExp(t, score);
    }
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < totals.size(); ++k) {
    if (totals[k] > totals[best]) best = k;
  }
  result.output = Sentence::FromTokens(std::move(outputs[best]));
  result.score = totals[best];
  return result;
}

template <typename T>
TruecaseResult HierModel<T>::TruecaseScored(const Sentence& lower,
                                            DecodeMode mode, int beam_size) const {
  if (lower.empty()) return {lower, 0.0};
  const std::size_t limit = static_cast<std::size_t>(config_.max_sentence_words);
  if (lower.size() <= limit) return DecodeChunk(lower, mode, beam_size);
  TruecaseResult result;
  std::vector<std::string> tokens;
  for (std::size_t start = 0; start < lower.size(); start += limit) {
    const std::size_t end = std::min(lower.size(), start + limit);
    std::vector<std::string> part(lower.tokens().begin() + start,
                                  lower.tokens().begin() + end);
    TruecaseResult r =
        DecodeChunk(Sentence::FromTokens(std::move(part)), mode, beam_size);
    result.score += r.score;
    tokens.insert(tokens.end(), r.output.tokens().begin(), r.output.tokens().end());
  }
  result.output = Sentence::FromTokens(std::move(tokens));
  return result;
}

template <typename T>
ModelFile HierModel<T>::ToModelFile(DType dtype) const {
  ModelFile file;
  nlohmann::json tensors = nlohmann::json::array();
  for (std::size_t i = 0; i < store_.size(); ++i) {
    const auto& p = store_[i];
    tensors.push_back({{"name", p.name}, {"rows", p.value.rows()}, {"cols", p.value.cols()}});
    file.tensors.push_back(StoredTensor::FromMatrix(p.value, dtype));
  }
  file.header = {{"format", kFormatName},
                 {"config", config_.ToJson()},
                 {"parameter_count", ParameterCount()},
                 {"tensors", tensors},
                 {"metadata", metadata_}};
  return file;
}

template <typename T>
void HierModel<T>::Save(const std::string& path, DType dtype) const {
  WriteModelFile(path, ToModelFile(dtype));
}

template <typename T>
HierModel<T> HierModel<T>::FromModelFile(const ModelFile& file) {
  const auto& h = file.header;
  if (!h.is_object() || h.value("format", "") != kFormatName) {
    throw Error(ErrorCode::kFormat, "not a hierarchical truecaser model");
  }
  ModelConfig config;
  try {
    config = ModelConfig::FromJson(h.at("config"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("model header: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::kFormat, e.what());
  }
  HierModel model(config);
  if (file.tensors.size() != model.store_.size()) {
    throw Error(ErrorCode::kFormat,
                "expected " + std::to_string(model.store_.size()) + " tensors, found " +
                    std::to_string(file.tensors.size()));
  }
  for (std::size_t i = 0; i < file.tensors.size(); ++i) {
    auto& p = model.store_[i];
    const auto& t = file.tensors[i];
    if (t.rows != p.value.rows() || t.cols != p.value.cols()) {
      throw Error(ErrorCode::kFormat, "tensor " + p.name + " has shape " +
                                          std::to_string(t.rows) + "x" +
                                          std::to_string(t.cols));
    }
    p.value = t.ToMatrix<T>();
  }
  if (h.contains("metadata")) model.metadata_ = h["metadata"];
  model.Freeze();
  return model;
}

template <typename T>
HierModel<T> HierModel<T>::Load(const std::string& path) {
  return FromModelFile(ReadModelFile(path));
}

template class HierModel<float>;
template class HierModel<double>;

}  // namespace truecase
