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

#include "truecase/nn.h"

#include "truecase/error.h"
#include "truecase/rng.h"

namespace truecase {

template <typename T>
Parameter<T>* ParameterStore<T>::Add(std::string name, Eigen::Index rows,
                                     Eigen::Index cols) {
  auto p = std::make_unique<Parameter<T>>();
  p->name = std::move(name);
  p->value = Matrix<T>::Zero(rows, cols);
  p->grad = Matrix<T>::Zero(rows, cols);
  params_.push_back(std::move(p));
  return params_.back().get();
}

template <typename T>
std::size_t ParameterStore<T>::ParameterCount() const {
  std::size_t n = 0;
  for (const auto& p : params_) n += static_cast<std::size_t>(p->value.size());
  return n;
}

template <typename T>
void ParameterStore<T>::ZeroGrad() {
  for (auto& p : params_) p->grad.setZero();
}

template <typename T>
void ParameterStore<T>::InitUniform(Rng* rng, double range) {
  for (auto& p : params_) {
    T* data = p->value.data();
    for (Eigen::Index i = 0; i < p->value.size(); ++i) {
      data[i] = static_cast<T>(rng->Uniform(-range, range));
    }
  }
}

template <typename T>
void ParameterStore<T>::SetZero() {
  for (auto& p : params_) p->value.setZero();
}

template <typename T>
double ParameterStore<T>::GradNorm() const {
  double sq = 0;
  for (const auto& p : params_) {
    sq += static_cast<double>(p->grad.squaredNorm());
  }
  return std::sqrt(sq);
}

template <typename T>
bool ParameterStore<T>::AllFinite() const {
  for (const auto& p : params_) {
    if (!p->value.allFinite()) return false;
  }
  return true;
}

// GruLayer

template <typename T>
GruLayer<T>::GruLayer(ParameterStore<T>* store, const std::string& prefix,
                      int input_dim, int hidden_dim)
    : input_dim_(input_dim), hidden_dim_(hidden_dim) {
  w_ = store->Add(prefix + ".w", 3 * hidden_dim, input_dim);
  u_ = store->Add(prefix + ".u", 3 * hidden_dim, hidden_dim);
  b_ = store->Add(prefix + ".b", 3 * hidden_dim, 1);
}

template <typename T>
Matrix<T> GruLayer<T>::Forward(const Matrix<T>& inputs, Cache* cache) const {
  const int h = hidden_dim_;
  const Eigen::Index steps = inputs.cols();
  if (inputs.rows() != input_dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "GRU input has " + std::to_string(inputs.rows()) + " rows, " +
                    "expected " + std::to_string(input_dim_));
  }
  Matrix<T> gx = Product<T>(w_->value, inputs);
  gx.colwise() += b_->value.col(0);

  Matrix<T> states(h, steps + 1);
  states.col(0).setZero();
  Matrix<T> gates(3 * h, steps);
  Matrix<T> reset_states(h, steps);
  const auto u_zr = u_->value.topRows(2 * h);
  const auto u_n = u_->value.bottomRows(h);
  Vector<T> zr(2 * h);
  Vector<T> n(h);
  for (Eigen::Index t = 0; t < steps; ++t) {
    const auto prev = states.col(t);
    zr.noalias() = u_zr * prev;
    zr += gx.col(t).head(2 * h);
    zr = zr.array().logistic().matrix();
    reset_states.col(t) = zr.tail(h).cwiseProduct(prev);
    n.noalias() = u_n * reset_states.col(t);
    n = (n + gx.col(t).tail(h)).array().tanh().matrix();
    const auto z = zr.head(h).array();
    states.col(t + 1) = ((T(1) - z) * n.array() + z * prev.array()).matrix();
    gates.col(t).head(2 * h) = zr;
    gates.col(t).tail(h) = n;
  }
  Matrix<T> outputs = states.rightCols(steps);
  if (cache != nullptr) {
    cache->inputs = inputs;
    cache->states = std::move(states);
    cache->gates = std::move(gates);
    cache->reset_states = std::move(reset_states);
  }
  return outputs;
}

template <typename T>
Matrix<T> GruLayer<T>::Backward(const Cache& cache,
                                const Matrix<T>& d_outputs) const {
  const int h = hidden_dim_;
  const Eigen::Index steps = cache.inputs.cols();
  const auto u_zr = u_->value.topRows(2 * h);
  const auto u_n = u_->value.bottomRows(h);
  Matrix<T> d_gates(3 * h, steps);
  Vector<T> dh_next = Vector<T>::Zero(h);
  Vector<T> dh(h), dn(h), dz(h), d_prev(h), dgn(h), drh(h), dr(h);
  for (Eigen::Index t = steps - 1; t >= 0; --t) {
    const auto prev = cache.states.col(t).array();
    const auto z = cache.gates.col(t).head(h).array();
    const auto r = cache.gates.col(t).segment(h, h).array();
    const auto n = cache.gates.col(t).tail(h).array();
    dh = d_outputs.col(t) + dh_next;
    dn = (dh.array() * (T(1) - z)).matrix();
    dz = (dh.array() * (prev - n)).matrix();
    d_prev = (dh.array() * z).matrix();
    dgn = (dn.array() * (T(1) - n * n)).matrix();
    drh.noalias() = u_n.transpose() * dgn;
    dr = (drh.array() * prev).matrix();
    d_prev.array() += drh.array() * r;
    d_gates.col(t).head(h) = (dz.array() * z * (T(1) - z)).matrix();
    d_gates.col(t).segment(h, h) = (dr.array() * r * (T(1) - r)).matrix();
    d_gates.col(t).tail(h) = dgn;
    d_prev.noalias() += u_zr.transpose() * d_gates.col(t).head(2 * h);
    dh_next = d_prev;
  }
  w_->grad.noalias() += d_gates * cache.inputs.transpose();
  b_->grad.col(0) += d_gates.rowwise().sum();
  u_->grad.topRows(2 * h).noalias() +=
      d_gates.topRows(2 * h) * cache.states.leftCols(steps).transpose();
  u_->grad.bottomRows(h).noalias() +=
      d_gates.bottomRows(h) * cache.reset_states.transpose();
  return w_->value.transpose() * d_gates;
}

template <typename T>
void GruLayer<T>::StepProjected(const Vector<T>& projected, const Vector<T>& h,
                                Vector<T>* next) const {
  const int hd = hidden_dim_;
  Vector<T> zr = projected.head(2 * hd);
  zr.noalias() += u_->value.topRows(2 * hd) * h;
  zr = zr.array().logistic().matrix();
  const Vector<T> rh = zr.tail(hd).cwiseProduct(h);
  Vector<T> n = projected.tail(hd);
  n.noalias() += u_->value.bottomRows(hd) * rh;
  n = n.array().tanh().matrix();
  const auto z = zr.head(hd).array();
  *next = ((T(1) - z) * n.array() + z * h.array()).matrix();
}

template <typename T>
Vector<T> GruLayer<T>::Step(const Vector<T>& x, const Vector<T>& h) const {
  if (x.size() != input_dim_ || h.size() != hidden_dim_) {
    throw Error(ErrorCode::kDimensionMismatch, "GRU step dimensions");
  }
  Vector<T> projected = w_->value * x + b_->value.col(0);
  Vector<T> next;
  StepProjected(projected, h, &next);
  return next;
}

template <typename T>
Vector<T> GruStep(const GruLayer<T>& cell, const Vector<T>& x,
                  const Vector<T>& h_prev) {
  return cell.Step(x, h_prev);
}

// BiEncoder

template <typename T>
BiEncoder<T>::BiEncoder(ParameterStore<T>* store, const std::string& prefix,
                        int input_dim, int cells, int layers)
    : cells_(cells) {
  if (cells % 2 != 0) {
    throw Error(ErrorCode::kConfig, "bidirectional cells must be even");
  }
  for (int k = 0; k < layers; ++k) {
    const int in = k == 0 ? input_dim : cells;
    const std::string name = prefix + ".l" + std::to_string(k);
    forward_.emplace_back(store, name + ".fwd", in, cells / 2);
    backward_.emplace_back(store, name + ".bwd", in, cells / 2);
  }
}

template <typename T>
std::vector<Matrix<T>> BiEncoder<T>::Forward(const Matrix<T>& inputs,
                                             Cache* cache) const {
  const int half = cells_ / 2;
  std::vector<Matrix<T>> outputs;
  outputs.reserve(forward_.size());
  if (cache != nullptr) {
    cache->forward.resize(forward_.size());
    cache->backward.resize(forward_.size());
  }
  for (std::size_t k = 0; k < forward_.size(); ++k) {
    const Matrix<T>& in = k == 0 ? inputs : outputs.back();
    Matrix<T> out(cells_, in.cols());
    out.topRows(half) =
        forward_[k].Forward(in, cache ? &cache->forward[k] : nullptr);
    const Matrix<T> reversed = in.rowwise().reverse();
    out.bottomRows(half) =
        backward_[k]
            .Forward(reversed, cache ? &cache->backward[k] : nullptr)
            .rowwise()
            .reverse();
    outputs.push_back(std::move(out));
  }
  return outputs;
}

template <typename T>
Matrix<T> BiEncoder<T>::Backward(const Cache& cache,
                                 std::vector<Matrix<T>> d_layers) const {
  const int half = cells_ / 2;
  Matrix<T> d_in;
  for (int k = static_cast<int>(forward_.size()) - 1; k >= 0; --k) {
    const Eigen::Index steps = cache.forward[k].inputs.cols();
    Matrix<T> d = d_layers.size() > static_cast<std::size_t>(k) &&
                          d_layers[k].size() > 0
                      ? std::move(d_layers[k])
                      : Matrix<T>::Zero(cells_, steps);
    if (d_in.size() > 0) d += d_in;
    d_in = forward_[k].Backward(cache.forward[k], d.topRows(half));
    const Matrix<T> d_rev = d.bottomRows(half).rowwise().reverse();
    d_in += backward_[k].Backward(cache.backward[k], d_rev).rowwise().reverse();
  }
  return d_in;
}

// GruStack

template <typename T>
GruStack<T>::GruStack(ParameterStore<T>* store, const std::string& prefix,
                      int input_dim, int cells, int layers)
    : cells_(cells) {
  for (int k = 0; k < layers; ++k) {
    layers_.emplace_back(store, prefix + ".l" + std::to_string(k),
                         k == 0 ? input_dim : cells, cells);
  }
}

template <typename T>
Matrix<T> GruStack<T>::Forward(const Matrix<T>& inputs, Cache* cache) const {
  if (cache != nullptr) cache->resize(layers_.size());
  Matrix<T> x = inputs;
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    x = layers_[k].Forward(x, cache ? &(*cache)[k] : nullptr);
  }
  return x;
}

template <typename T>
Matrix<T> GruStack<T>::Backward(const Cache& cache, const Matrix<T>& d_top) const {
  Matrix<T> d = d_top;
  for (int k = static_cast<int>(layers_.size()) - 1; k >= 0; --k) {
    d = layers_[k].Backward(cache[k], d);
  }
  return d;
}

template <typename T>
void GruStack<T>::StepProjected(const Vector<T>& first_projected,
                                std::vector<Vector<T>>* states) const {
  Vector<T> next;
  layers_[0].StepProjected(first_projected, (*states)[0], &next);
  (*states)[0] = next;
  for (std::size_t k = 1; k < layers_.size(); ++k) {
    const auto& layer = layers_[k];
    Vector<T> projected = layer.w()->value * (*states)[k - 1];
    projected += layer.b()->value.col(0);
    layer.StepProjected(projected, (*states)[k], &next);
    (*states)[k] = next;
  }
}

// Linear

template <typename T>
Linear<T>::Linear(ParameterStore<T>* store, const std::string& prefix,
                  int input_dim, int output_dim) {
  w_ = store->Add(prefix + ".w", output_dim, input_dim);
  b_ = store->Add(prefix + ".b", output_dim, 1);
}

template <typename T>
Matrix<T> Linear<T>::Forward(const Matrix<T>& inputs) const {
  Matrix<T> y = Product<T>(w_->value, inputs);
  y.colwise() += b_->value.col(0);
  return y;
}

template <typename T>
Matrix<T> Linear<T>::Backward(const Matrix<T>& inputs,
                              const Matrix<T>& d_outputs) const {
  w_->grad.noalias() += d_outputs * inputs.transpose();
  b_->grad.col(0) += d_outputs.rowwise().sum();
  return w_->value.transpose() * d_outputs;
}

template <typename T>
Matrix<T> Softmax(const Matrix<T>& logits) {
  Matrix<T> out(logits.rows(), logits.cols());
  for (Eigen::Index t = 0; t < logits.cols(); ++t) {
    const T m = logits.col(t).maxCoeff();
    out.col(t) = (logits.col(t).array() - m).exp().matrix();
    out.col(t) /= out.col(t).sum();
  }
  return out;
}

template <typename T>
T MaskedCrossEntropy(const Matrix<T>& logits,
                     const std::vector<std::uint8_t>& targets,
                     const std::vector<std::uint8_t>& mask,
                     Matrix<T>* d_logits) {
  T loss = 0;
  if (d_logits != nullptr) *d_logits = Matrix<T>::Zero(2, logits.cols());
  for (Eigen::Index t = 0; t < logits.cols(); ++t) {
    if (!mask[t]) continue;
    const auto lp = LogSoftmax2(logits(0, t), logits(1, t));
    loss -= lp[targets[t]];
    if (d_logits != nullptr) {
      (*d_logits)(0, t) = std::exp(lp[0]);
      (*d_logits)(1, t) = std::exp(lp[1]);
      (*d_logits)(targets[t], t) -= T(1);
    }
  }
  return loss;
}

#define TRUECASE_INSTANTIATE_NN(T)                                         \
  template class ParameterStore<T>;                                        \
  template class GruLayer<T>;                                              \
  template class BiEncoder<T>;                                             \
  template class GruStack<T>;                                              \
  template class Linear<T>;                                                \
  template Matrix<T> Softmax<T>(const Matrix<T>&);                         \
  template T MaskedCrossEntropy<T>(const Matrix<T>&,                       \
                                   const std::vector<std::uint8_t>&,       \
                                   const std::vector<std::uint8_t>&,       \
                                   Matrix<T>*);                            \
  template Vector<T> GruStep<T>(const GruLayer<T>&, const Vector<T>&,      \
                                const Vector<T>&);

TRUECASE_INSTANTIATE_NN(float)
TRUECASE_INSTANTIATE_NN(double)

#undef TRUECASE_INSTANTIATE_NN

}  // namespace truecase
