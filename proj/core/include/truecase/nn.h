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

// Dense numerical core: parameters, GRU layers with hand-written backward
// passes, linear maps and two-way log-softmax.
//
// Sequences are matrices with one column per time step. Every layer keeps
// its forward intermediates in a Cache that Backward consumes; gradients
// accumulate into Parameter::grad.

#ifndef TRUECASE_NN_H_
#define TRUECASE_NN_H_

#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace truecase {

class Rng;

template <typename T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

template <typename T>
struct Parameter {
  std::string name;
  Matrix<T> value;
  Matrix<T> grad;
};

// Owns parameters in declaration order. Addresses are stable for the life
// of the store, so layers keep raw pointers.
template <typename T>
class ParameterStore {
 public:
  ParameterStore() = default;
  ParameterStore(const ParameterStore&) = delete;
  ParameterStore& operator=(const ParameterStore&) = delete;
  ParameterStore(ParameterStore&&) = default;
  ParameterStore& operator=(ParameterStore&&) = default;

  Parameter<T>* Add(std::string name, Eigen::Index rows, Eigen::Index cols);

  std::size_t size() const { return params_.size(); }
  Parameter<T>& operator[](std::size_t i) { return *params_[i]; }
  const Parameter<T>& operator[](std::size_t i) const { return *params_[i]; }

  std::size_t ParameterCount() const;
  void ZeroGrad();
  void InitUniform(Rng* rng, double range);
  void SetZero();
  double GradNorm() const;
  bool AllFinite() const;

 private:
  std::vector<std::unique_ptr<Parameter<T>>> params_;
};

template <typename T>
inline T Sigmoid(T x) {
  return T(1) / (T(1) + std::exp(-x));
}

// Single GRU layer:
//   z = sigmoid(Wz x + Uz h + bz)
//   r = sigmoid(Wr x + Ur h + br)
//   n = tanh(Wn x + Un (r * h) + bn)
//   h' = (1 - z) * n + z * h
// W is 3H x in, U is 3H x H, b is 3H, gate blocks in z, r, n order.
template <typename T>
class GruLayer {
 public:
  struct Cache {
    Matrix<T> inputs;        // in x T
    Matrix<T> states;        // H x (T + 1); column 0 is the initial state
    Matrix<T> gates;         // 3H x T activated z, r, n
    Matrix<T> reset_states;  // H x T, r * h_prev
  };

  GruLayer() = default;
  GruLayer(ParameterStore<T>* store, const std::string& prefix, int input_dim,
           int hidden_dim);

  int input_dim() const { return input_dim_; }
  int hidden_dim() const { return hidden_dim_; }

  // Runs from a zero initial state; returns H x T.
  Matrix<T> Forward(const Matrix<T>& inputs, Cache* cache) const;
  // Returns d_inputs and accumulates parameter gradients.
  Matrix<T> Backward(const Cache& cache, const Matrix<T>& d_outputs) const;

  // One step given the input projection W x + b.
  void StepProjected(const Vector<T>& projected, const Vector<T>& h,
                     Vector<T>* next) const;
  Vector<T> Step(const Vector<T>& x, const Vector<T>& h) const;

  Parameter<T>* w() const { return w_; }
  Parameter<T>* u() const { return u_; }
  Parameter<T>* b() const { return b_; }

 private:
  int input_dim_ = 0;
  int hidden_dim_ = 0;
  Parameter<T>* w_ = nullptr;
  Parameter<T>* u_ = nullptr;
  Parameter<T>* b_ = nullptr;
};

// Stacked bidirectional GRU encoder. Each direction has cells/2 units; layer
// k > 0 reads the concatenated [forward; backward] output of layer k - 1.
template <typename T>
class BiEncoder {
 public:
  struct Cache {
    std::vector<typename GruLayer<T>::Cache> forward;
    std::vector<typename GruLayer<T>::Cache> backward;
  };

  BiEncoder() = default;
  BiEncoder(ParameterStore<T>* store, const std::string& prefix, int input_dim,
            int cells, int layers);

  int cells() const { return cells_; }
  int layers() const { return static_cast<int>(forward_.size()); }

  // One cells x T matrix per layer, forward states on top.
  std::vector<Matrix<T>> Forward(const Matrix<T>& inputs, Cache* cache) const;
  // d_layers[k] is the gradient for layer k's output (empty means zero).
  Matrix<T> Backward(const Cache& cache, std::vector<Matrix<T>> d_layers) const;

 private:
  int cells_ = 0;
  std::vector<GruLayer<T>> forward_;
  std::vector<GruLayer<T>> backward_;
};

// Stacked unidirectional GRU.
template <typename T>
class GruStack {
 public:
  using Cache = std::vector<typename GruLayer<T>::Cache>;

  GruStack() = default;
  GruStack(ParameterStore<T>* store, const std::string& prefix, int input_dim,
           int cells, int layers);

  int cells() const { return cells_; }
  int layers() const { return static_cast<int>(layers_.size()); }
  const GruLayer<T>& layer(int k) const { return layers_[k]; }

  Matrix<T> Forward(const Matrix<T>& inputs, Cache* cache) const;
  Matrix<T> Backward(const Cache& cache, const Matrix<T>& d_top) const;

  // Advances all layers one step. `first_projected` is layer 0's W x + b.
  void StepProjected(const Vector<T>& first_projected,
                     std::vector<Vector<T>>* states) const;

 private:
  int cells_ = 0;
  std::vector<GruLayer<T>> layers_;
};

// y = W x + b.
template <typename T>
class Linear {
 public:
  Linear() = default;
  Linear(ParameterStore<T>* store, const std::string& prefix, int input_dim,
         int output_dim);

  Matrix<T> Forward(const Matrix<T>& inputs) const;
  Matrix<T> Backward(const Matrix<T>& inputs, const Matrix<T>& d_outputs) const;

  Parameter<T>* w() const { return w_; }
  Parameter<T>* b() const { return b_; }

 private:
  Parameter<T>* w_ = nullptr;
  Parameter<T>* b_ = nullptr;
};

// w * x. Narrow right-hand sides, as in batch-size-1 decoding, go column by
// column through matrix-vector products, which skip GEMM's packing of w.
inline constexpr Eigen::Index kNarrowColumns = 4;

template <typename T, typename W, typename X>
Matrix<T> Product(const Eigen::MatrixBase<W>& w, const Eigen::MatrixBase<X>& x) {
  Matrix<T> y(w.rows(), x.cols());
  if (x.cols() <= kNarrowColumns) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) y.col(j).noalias() = w * x.col(j);
  } else {
    y.noalias() = w * x;
  }
  return y;
}

// Log-softmax of a two-way logit pair.
template <typename T>
inline std::array<T, 2> LogSoftmax2(T a, T b) {
  const T m = std::max(a, b);
  const T lse = m + std::log(std::exp(a - m) + std::exp(b - m));
  return {a - lse, b - lse};
}

// Softmax over each column.
template <typename T>
Matrix<T> Softmax(const Matrix<T>& logits);

// Cross-entropy over columns of a 2 x T logit matrix with per-column masks.
// Returns the summed loss and writes d_logits.
template <typename T>
T MaskedCrossEntropy(const Matrix<T>& logits,
                     const std::vector<std::uint8_t>& targets,
                     const std::vector<std::uint8_t>& mask, Matrix<T>* d_logits);

// Reference single GRU step over a layer's weights.
template <typename T>
Vector<T> GruStep(const GruLayer<T>& cell, const Vector<T>& x,
                  const Vector<T>& h_prev);

}  // namespace truecase

#endif  // TRUECASE_NN_H_
