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

#include "truecase/char_reference.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include "truecase/adam.h"
#include "truecase/error.h"
#include "truecase/features.h"
#include "truecase/hier_model.h"
#include "truecase/rng.h"

namespace truecase {
namespace {

constexpr const char* kFormatName = "truecase-char";
constexpr int kStart = 2;

std::vector<CodePoint> SentenceChars(const Sentence& s) {
  return DecodeUtf8(s.Join());
}

}  // namespace

CharTaggerConfig CharTaggerConfig::EqualWidth(const ModelConfig& m) {
  CharTaggerConfig c;
  c.embedding_size = m.input_embedding_size;
  c.label_embedding_size = m.output_embedding_size;
  c.encoder_layers = m.forward_encoder_layers;
  c.decoder_layers = m.decoder_layers;
  c.encoder_cells = m.encoder_cells;
  c.decoder_cells = m.decoder_cells;
  c.num_buckets = m.num_buckets;
  c.beam_size = m.beam_size;
  return c;
}

void CharTaggerConfig::Validate() const {
  for (int v : {embedding_size, label_embedding_size, encoder_layers, decoder_layers,
                encoder_cells, decoder_cells, num_buckets, beam_size}) {
    if (v < 1) throw Error(ErrorCode::kConfig, "char tagger sizes must be >= 1");
  }
  if (encoder_cells % 2 != 0) throw Error(ErrorCode::kConfig, "encoder_cells must be even");
}

nlohmann::json CharTaggerConfig::ToJson() const {
  return {{"embedding_size", embedding_size},
          {"label_embedding_size", label_embedding_size},
          {"encoder_layers", encoder_layers},
          {"decoder_layers", decoder_layers},
          {"encoder_cells", encoder_cells},
          {"decoder_cells", decoder_cells},
          {"num_buckets", num_buckets},
          {"beam_size", beam_size}};
}

CharTaggerConfig CharTaggerConfig::FromJson(const nlohmann::json& j) {
  CharTaggerConfig c;
  try {
    c.embedding_size = j.at("embedding_size").get<int>();
    c.label_embedding_size = j.at("label_embedding_size").get<int>();
    c.encoder_layers = j.at("encoder_layers").get<int>();
    c.decoder_layers = j.at("decoder_layers").get<int>();
    c.encoder_cells = j.at("encoder_cells").get<int>();
    c.decoder_cells = j.at("decoder_cells").get<int>();
    c.num_buckets = j.at("num_buckets").get<int>();
    c.beam_size = j.at("beam_size").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, e.what());
  }
  return c;
}

template <typename T>
CharTagger<T>::CharTagger(const CharTaggerConfig& config) : config_(config) {
  config_.Validate();
  const int d = config_.embedding_size;
  const int o = config_.label_embedding_size;
  embedding_ = store_.Add("embedding", d, config_.num_buckets);
  encoder_ = BiEncoder<T>(&store_, "encoder", d, config_.encoder_cells,
                          config_.encoder_layers);
  label_embedding_ = store_.Add("label_embedding", o, 3);
  decoder_ = GruStack<T>(&store_, "decoder", config_.encoder_cells + o,
                         config_.decoder_cells, config_.decoder_layers);
  output_ = Linear<T>(&store_, "output", config_.decoder_cells, 2);
}

template <typename T>
void CharTagger<T>::InitUniform(std::uint64_t seed, double range) {
  Rng rng(seed);
  store_.InitUniform(&rng, range);
}

template <typename T>
Matrix<T> CharTagger<T>::Inputs(const std::vector<CodePoint>& chars,
                                std::vector<int>* buckets) const {
  Matrix<T> x(config_.embedding_size, chars.size());
  for (std::size_t j = 0; j < chars.size(); ++j) {
    const int b = CharBucket(chars[j], config_.num_buckets);
    x.col(j) = embedding_->value.col(b);
    if (buckets != nullptr) buckets->push_back(b);
  }
  return x;
}

template <typename T>
T CharTagger<T>::Loss(const LabeledPair& pair, bool backward) const {
  const std::vector<CodePoint> chars = SentenceChars(pair.lower);
  if (chars.empty()) throw Error(ErrorCode::kEmptySentence, "empty sentence");
  const int e = config_.encoder_cells;
  const int o = config_.label_embedding_size;
  const Eigen::Index m = static_cast<Eigen::Index>(chars.size());
  std::vector<std::uint8_t> labels;
  for (std::size_t i = 0; i < pair.lower.size(); ++i) {
    if (i) labels.push_back(0);
    for (CharLabel c : pair.char_labels[i]) labels.push_back(static_cast<std::uint8_t>(c));
  }
  std::vector<int> buckets;
  typename BiEncoder<T>::Cache enc_cache;
  const auto enc = encoder_.Forward(Inputs(chars, &buckets), backward ? &enc_cache : nullptr);
  Matrix<T> in(e + o, m);
  in.topRows(e) = enc.back();
  std::vector<std::uint8_t> mask(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    in.col(j).tail(o) = label_embedding_->value.col(j == 0 ? kStart : labels[j - 1]);
    mask[j] = IsCasedPosition(chars[j]) ? 1 : 0;
  }
  typename GruStack<T>::Cache dec_cache;
  const Matrix<T> dec = decoder_.Forward(in, backward ? &dec_cache : nullptr);
  Matrix<T> d_logits;
  const T loss = MaskedCrossEntropy(output_.Forward(dec), labels, mask,
                                    backward ? &d_logits : nullptr);
  if (backward) {
    const Matrix<T> d_in = decoder_.Backward(dec_cache, output_.Backward(dec, d_logits));
    for (Eigen::Index j = 0; j < m; ++j) {
      label_embedding_->grad.col(j == 0 ? kStart : labels[j - 1]) += d_in.col(j).tail(o);
    }
    std::vector<Matrix<T>> d_enc(enc.size());
    d_enc.back() = d_in.topRows(e);
    const Matrix<T> dx = encoder_.Backward(enc_cache, std::move(d_enc));
    for (Eigen::Index j = 0; j < m; ++j) embedding_->grad.col(buckets[j]) += dx.col(j);
  }
  return loss;
}

template <typename T>
T CharTagger<T>::SentenceLoss(const LabeledPair& pair) const {
  return Loss(pair, false);
}

template <typename T>
T CharTagger<T>::AccumulateGradients(const LabeledPair& pair) {
  return Loss(pair, true);
}

template <typename T>
std::vector<LabelHypothesis> CharTagger<T>::BeamSearch(const Sentence& lower,
                                                       int beam_size) const {
  if (beam_size <= 0) beam_size = config_.beam_size;
  const std::vector<CodePoint> chars = SentenceChars(lower);
  const int e = config_.encoder_cells;
  const int o = config_.label_embedding_size;
  const auto enc = encoder_.Forward(Inputs(chars, nullptr), nullptr);
  const auto& w0 = decoder_.layer(0);
  Matrix<T> proj = Product<T>(w0.w()->value.leftCols(e), enc.back());
  proj.colwise() += w0.b()->value.col(0);
  const Matrix<T> label_proj =
      Product<T>(w0.w()->value.rightCols(o), label_embedding_->value);
  using State = std::vector<Vector<T>>;
  State init(decoder_.layers(), Vector<T>::Zero(config_.decoder_cells));
  const Matrix<T>& ow = output_.w()->value;
  const Matrix<T>& ob = output_.b()->value;
  return BinaryBeamSearch(
      static_cast<int>(chars.size()), beam_size, std::move(init),
      [&](const State& s, int pos, int prev) {
        State next = s;
        decoder_.StepProjected(proj.col(pos) + label_proj.col(prev < 0 ? kStart : prev),
                               &next);
        std::array<T, 2> lp{T(0), -std::numeric_limits<T>::infinity()};
        if (IsCasedPosition(chars[pos])) {
          const Vector<T>& h = next.back();
          lp = LogSoftmax2<T>(ow.row(0).dot(h) + ob(0, 0), ow.row(1).dot(h) + ob(1, 0));
        }
        return std::make_pair(std::move(next), lp);
      });
}

template <typename T>
Sentence CharTagger<T>::Truecase(const Sentence& lower, int beam_size) const {
  if (lower.empty()) return lower;
  const auto top = BeamSearch(lower, beam_size).front();
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  for (const auto& t : lower.tokens()) {
    auto cps = DecodeUtf8(t);
    for (auto& cp : cps) {
      if (top.labels[pos++]) cp = ToUpper(cp);
    }
    ++pos;  // the space
    tokens.push_back(EncodeUtf8(cps));
  }
  return Sentence::FromTokens(std::move(tokens));
}

template <typename T>
ModelFile CharTagger<T>::ToModelFile(DType dtype) const {
  ModelFile file;
  for (std::size_t i = 0; i < store_.size(); ++i) {
    file.tensors.push_back(StoredTensor::FromMatrix(store_[i].value, dtype));
  }
  file.header = {{"format", kFormatName},
                 {"config", config_.ToJson()},
                 {"parameter_count", ParameterCount()}};
  return file;
}

template <typename T>
CharTagger<T> CharTagger<T>::FromModelFile(const ModelFile& file) {
  if (file.header.value("format", "") != kFormatName) {
    throw Error(ErrorCode::kFormat, "not a character tagger model");
  }
  CharTagger tagger(CharTaggerConfig::FromJson(file.header.at("config")));
  if (file.tensors.size() != tagger.store_.size()) {
    throw Error(ErrorCode::kFormat, "tensor count mismatch");
  }
  for (std::size_t i = 0; i < file.tensors.size(); ++i) {
    auto& p = tagger.store_[i];
    const auto& t = file.tensors[i];
    if (t.rows != p.value.rows() || t.cols != p.value.cols()) {
      throw Error(ErrorCode::kFormat, "tensor " + p.name + " shape mismatch");
    }
    p.value = t.ToMatrix<T>();
  }
  return tagger;
}

template class CharTagger<float>;
template class CharTagger<double>;

void TrainCharTagger(CharTagger<float>* tagger, const std::vector<LabeledPair>& pairs,
                     const CharTrainOptions& options) {
  if (pairs.empty()) throw Error(ErrorCode::kEmptyCorpus, "no training sentences");
  Rng rng(options.seed);
  tagger->InitUniform(rng.Next(), options.init_range);
  ParameterStore<float>& params = tagger->params();
  AdamConfig ac;
  ac.learning_rate = options.learning_rate;
  Adam<float> adam(&params, ac);
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    rng.Shuffle(order.begin(), order.end());
    for (std::size_t b = 0; b < order.size(); b += options.batch_size) {
      const std::size_t end = std::min(order.size(), b + options.batch_size);
      params.ZeroGrad();
      for (std::size_t k = b; k < end; ++k) tagger->AccumulateGradients(pairs[order[k]]);
      const float inv = 1.0f / static_cast<float>(end - b);
      for (std::size_t i = 0; i < params.size(); ++i) params[i].grad *= inv;
      ClipGradNorm(&params, options.clip_norm);
      adam.Step();
    }
  }
}

}  // namespace truecase
