// Copyright 2026 The ScopeIt Authors.
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

#ifndef SCOPEIT_NN_GRU_H_
#define SCOPEIT_NN_GRU_H_

#include <span>
#include <string>
#include <vector>

#include "scopeit/nn/graph.h"
#include "scopeit/nn/parameter.h"

namespace scopeit::nn {

// One GRU direction of one layer:
//   r  = sigmoid(W_ir x + b_ir + W_hr h + b_hr)
//   z  = sigmoid(W_iz x + b_iz + W_hz h + b_hz)
//   n  = tanh(W_in x + b_in + r .* (W_hn h + b_hn))
//   h' = (1 - z) .* n + z .* h
template <typename T>
struct GruLayerParams {
  size_t input_size = 0;
  size_t hidden_size = 0;
  Parameter<T> w_ir, w_iz, w_in;
  Parameter<T> b_ir, b_iz, b_in;
  Parameter<T> w_hr, w_hz, w_hn;
  Parameter<T> b_hr, b_hz, b_hn;

  static GruLayerParams create(const std::string& prefix, size_t input, size_t hidden);
  void collect(ParameterRefs<T>& out);
  void collect(std::vector<const Parameter<T>*>& out) const;
  // Weights uniform(-1/sqrt(H), 1/sqrt(H)); biases zero.
  void initialize(std::mt19937_64& rng);
};

// Stacked bidirectional GRU. Layer k > 0 consumes the concatenated
// [forward; backward] outputs of layer k - 1.
template <typename T>
struct BiGruParams {
  size_t input_size = 0;
  size_t hidden_size = 0;
  std::vector<GruLayerParams<T>> forward;
  std::vector<GruLayerParams<T>> backward;

  static BiGruParams create(const std::string& prefix, size_t input, size_t hidden,
                            size_t layers);
  size_t layers() const { return forward.size(); }
  void collect(ParameterRefs<T>& out);
  void collect(std::vector<const Parameter<T>*>& out) const;
  void initialize(std::mt19937_64& rng);
};

// Graph-level result for a batch of B sequences padded to `steps`.
struct BiGruStates {
  // Top layer, one (H x B) node per step.
  std::vector<Var> forward;
  std::vector<Var> backward;
  // Top-layer forward state at each sequence's last valid step and backward
  // state at step 0, both (H x B).
  Var final_forward;
  Var final_backward;
};

// `inputs` is (input_size x steps*B), step-major. Every length must lie in
// [1, steps]; padded steps carry the forward state unchanged and leave the
// backward state at zero, so padding never reaches valid positions.
template <typename T>
BiGruStates bigru_forward(Graph<T>& g, const BiGruParams<T>& params, Var inputs,
                          size_t steps, std::span<const size_t> lengths);

// Per-position [forward; backward] outputs as one (2H x steps*B) node.
template <typename T>
Var bigru_outputs(Graph<T>& g, const BiGruStates& states);

// Value-level entry points.
template <typename T>
Vector<T> gru_cell(const Vector<T>& x, const Vector<T>& h, const GruLayerParams<T>& p);

template <typename T>
struct BiGruEncoding {
  std::vector<Vector<T>> outputs;  // 2H per position
  Vector<T> final_forward;
  Vector<T> final_backward;
};

template <typename T>
BiGruEncoding<T> bigru_encode(const std::vector<Vector<T>>& sequence, const BiGruParams<T>& params);

// Number of scalars in a GRU direction with the given sizes.
constexpr size_t gru_direction_size(size_t input, size_t hidden) {
  return 3 * (hidden * input + hidden * hidden + 2 * hidden);
}

constexpr size_t bigru_size(size_t input, size_t hidden, size_t layers) {
  size_t n = 0;
  for (size_t k = 0; k < layers; ++k) n += 2 * gru_direction_size(k == 0 ? input : 2 * hidden, hidden);
  return n;
}

}  // namespace scopeit::nn

#endif  // SCOPEIT_NN_GRU_H_
