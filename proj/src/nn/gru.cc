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

#include "scopeit/nn/gru.h"

#include <cmath>

#include "scopeit/common/error.h"

namespace scopeit::nn {
namespace {

template <typename T>
struct DirectionLeaves {
  Var w_ir, w_iz, w_in, b_ir, b_iz, b_in, w_hr, w_hz, w_hn, b_hr, b_hz, b_hn;
};

template <typename T>
DirectionLeaves<T> leaves(Graph<T>& g, const GruLayerParams<T>& p) {
  return {g.param(p.w_ir), g.param(p.w_iz), g.param(p.w_in), g.param(p.b_ir),
          g.param(p.b_iz), g.param(p.b_in), g.param(p.w_hr), g.param(p.w_hz),
          g.param(p.w_hn), g.param(p.b_hr), g.param(p.b_hz), g.param(p.b_hn)};
}

template <typename T>
Var step(Graph<T>& g, const DirectionLeaves<T>& L, Var a_r, Var a_z, Var a_n, Var h) {
  Var r = g.sigmoid(g.add(a_r, g.affine(L.w_hr, h, L.b_hr)));
  Var z = g.sigmoid(g.add(a_z, g.affine(L.w_hz, h, L.b_hz)));
  Var n = g.tanh(g.add(a_n, g.mul(r, g.affine(L.w_hn, h, L.b_hn))));
  return g.add(g.mul(g.one_minus(z), n), g.mul(z, h));
}

// Runs one direction over all steps; returns the state after each step,
// indexed by position.
template <typename T>
std::vector<Var> run_direction(Graph<T>& g, const GruLayerParams<T>& p, Var inputs,
                               size_t steps, std::span<const size_t> lengths, bool reverse) {
  const Eigen::Index batch = static_cast<Eigen::Index>(lengths.size());
  DirectionLeaves<T> L = leaves(g, p);
  // Input projections for every step in one product each.
  Var all_r = g.affine(L.w_ir, inputs, L.b_ir);
  Var all_z = g.affine(L.w_iz, inputs, L.b_iz);
  Var all_n = g.affine(L.w_in, inputs, L.b_in);
  Var h = g.constant(Matrix<T>::Zero(static_cast<Eigen::Index>(p.hidden_size), batch));
  std::vector<Var> states(steps);
  typename Graph<T>::ColumnMask mask(static_cast<size_t>(batch));
  for (size_t i = 0; i < steps; ++i) {
    size_t t = reverse ? steps - 1 - i : i;
    Eigen::Index col = static_cast<Eigen::Index>(t) * batch;
    Var fresh = step(g, L, g.slice_cols(all_r, col, batch), g.slice_cols(all_z, col, batch),
                     g.slice_cols(all_n, col, batch), h);
    bool padded = false;
    for (size_t b = 0; b < lengths.size(); ++b) {
      mask[b] = t < lengths[b];
      padded = padded || !mask[b];
    }
    h = padded ? g.mask_blend(fresh, h, mask) : fresh;
    states[t] = h;
  }
  return states;
}

}  // namespace

template <typename T>
GruLayerParams<T> GruLayerParams<T>::create(const std::string& prefix, size_t input,
                                            size_t hidden) {
  GruLayerParams p;
  p.input_size = input;
  p.hidden_size = hidden;
  p.w_ir = Parameter<T>::matrix(prefix + ".w_ir", hidden, input);
  p.w_iz = Parameter<T>::matrix(prefix + ".w_iz", hidden, input);
  p.w_in = Parameter<T>::matrix(prefix + ".w_in", hidden, input);
  p.b_ir = Parameter<T>::vector(prefix + ".b_ir", hidden);
  p.b_iz = Parameter<T>::vector(prefix + ".b_iz", hidden);
  p.b_in = Parameter<T>::vector(prefix + ".b_in", hidden);
  p.w_hr = Parameter<T>::matrix(prefix + ".w_hr", hidden, hidden);
  p.w_hz = Parameter<T>::matrix(prefix + ".w_hz", hidden, hidden);
  p.w_hn = Parameter<T>::matrix(prefix + ".w_hn", hidden, hidden);
  p.b_hr = Parameter<T>::vector(prefix + ".b_hr", hidden);
  p.b_hz = Parameter<T>::vector(prefix + ".b_hz", hidden);
  p.b_hn = Parameter<T>::vector(prefix + ".b_hn", hidden);
  return p;
}

template <typename T>
void GruLayerParams<T>::collect(ParameterRefs<T>& out) {
  for (Parameter<T>* q : {&w_ir, &w_iz, &w_in, &b_ir, &b_iz, &b_in, &w_hr, &w_hz, &w_hn, &b_hr,
                          &b_hz, &b_hn}) {
    out.push_back(q);
  }
}

template <typename T>
void GruLayerParams<T>::collect(std::vector<const Parameter<T>*>& out) const {
  for (const Parameter<T>* q : {&w_ir, &w_iz, &w_in, &b_ir, &b_iz, &b_in, &w_hr, &w_hz, &w_hn,
                                &b_hr, &b_hz, &b_hn}) {
    out.push_back(q);
  }
}

template <typename T>
void GruLayerParams<T>::initialize(std::mt19937_64& rng) {
  double bound = 1.0 / std::sqrt(static_cast<double>(hidden_size));
  for (Parameter<T>* w : {&w_ir, &w_iz, &w_in, &w_hr, &w_hz, &w_hn}) init_uniform(*w, bound, rng);
  for (Parameter<T>* b : {&b_ir, &b_iz, &b_in, &b_hr, &b_hz, &b_hn}) b->value.setZero();
}

template <typename T>
BiGruParams<T> BiGruParams<T>::create(const std::string& prefix, size_t input, size_t hidden,
                                      size_t layers) {
  if (layers == 0) throw ShapeMismatch(prefix + ": a BiGRU needs at least one layer");
  BiGruParams p;
  p.input_size = input;
  p.hidden_size = hidden;
  for (size_t k = 0; k < layers; ++k) {
    size_t in = k == 0 ? input : 2 * hidden;
    std::string l = prefix + ".l" + std::to_string(k);
    p.forward.push_back(GruLayerParams<T>::create(l + ".fwd", in, hidden));
    p.backward.push_back(GruLayerParams<T>::create(l + ".bwd", in, hidden));
  }
  return p;
}

template <typename T>
void BiGruParams<T>::collect(ParameterRefs<T>& out) {
  for (size_t k = 0; k < forward.size(); ++k) {
    forward[k].collect(out);
    backward[k].collect(out);
  }
}

template <typename T>
void BiGruParams<T>::collect(std::vector<const Parameter<T>*>& out) const {
  for (size_t k = 0; k < forward.size(); ++k) {
    forward[k].collect(out);
    backward[k].collect(out);
  }
}

template <typename T>
void BiGruParams<T>::initialize(std::mt19937_64& rng) {
  for (size_t k = 0; k < forward.size(); ++k) {
    forward[k].initialize(rng);
    backward[k].initialize(rng);
  }
}

template <typename T>
BiGruStates bigru_forward(Graph<T>& g, const BiGruParams<T>& params, Var inputs, size_t steps,
                          std::span<const size_t> lengths) {
  if (steps == 0 || lengths.empty()) throw EmptySequence("BiGRU over an empty sequence batch");
  for (size_t len : lengths) {
    if (len == 0 || len > steps) {
      throw EmptySequence("BiGRU sequence length " + std::to_string(len) + " outside [1, " +
                          std::to_string(steps) + "]");
    }
  }
  const auto& in = g.value(inputs);
  if (static_cast<size_t>(in.rows()) != params.input_size ||
      static_cast<size_t>(in.cols()) != steps * lengths.size()) {
    throw ShapeMismatch("BiGRU input is " + std::to_string(in.rows()) + "x" +
                        std::to_string(in.cols()) + ", expected " +
                        std::to_string(params.input_size) + "x" +
                        std::to_string(steps * lengths.size()));
  }
  BiGruStates s;
  Var layer_in = inputs;
  for (size_t k = 0; k < params.layers(); ++k) {
    s.forward = run_direction(g, params.forward[k], layer_in, steps, lengths, false);
    s.backward = run_direction(g, params.backward[k], layer_in, steps, lengths, true);
    if (k + 1 < params.layers()) layer_in = bigru_outputs(g, s);
  }
  s.final_forward = s.forward.back();
  s.final_backward = s.backward.front();
  return s;
}

template <typename T>
Var bigru_outputs(Graph<T>& g, const BiGruStates& states) {
  std::vector<Var> per_step;
  per_step.reserve(states.forward.size());
  for (size_t t = 0; t < states.forward.size(); ++t) {
    Var pair[2] = {states.forward[t], states.backward[t]};
    per_step.push_back(g.concat_rows(pair));
  }
  return g.concat_cols(per_step);
}

template <typename T>
Vector<T> gru_cell(const Vector<T>& x, const Vector<T>& h, const GruLayerParams<T>& p) {
  if (static_cast<size_t>(x.size()) != p.input_size ||
      static_cast<size_t>(h.size()) != p.hidden_size) {
    throw ShapeMismatch("gru_cell got x of " + std::to_string(x.size()) + " and h of " +
                        std::to_string(h.size()) + " for a " + std::to_string(p.input_size) +
                        "->" + std::to_string(p.hidden_size) + " cell");
  }
  Graph<T> g(false);
  DirectionLeaves<T> L = leaves(g, p);
  Var xv = g.constant(x);
  Var hv = g.constant(h);
  Var out = step(g, L, g.affine(L.w_ir, xv, L.b_ir), g.affine(L.w_iz, xv, L.b_iz),
                 g.affine(L.w_in, xv, L.b_in), hv);
  return g.value(out).col(0);
}

template <typename T>
BiGruEncoding<T> bigru_encode(const std::vector<Vector<T>>& sequence, const BiGruParams<T>& params) {
  if (sequence.empty()) throw EmptySequence("bigru_encode of an empty sequence");
  Matrix<T> in(static_cast<Eigen::Index>(params.input_size),
               static_cast<Eigen::Index>(sequence.size()));
  for (size_t t = 0; t < sequence.size(); ++t) {
    if (static_cast<size_t>(sequence[t].size()) != params.input_size) {
      throw ShapeMismatch("bigru_encode step " + std::to_string(t) + " has width " +
                          std::to_string(sequence[t].size()));
    }
    in.col(static_cast<Eigen::Index>(t)) = sequence[t];
  }
  Graph<T> g(false);
  size_t len = sequence.size();
  BiGruStates s = bigru_forward(g, params, g.constant(std::move(in)), len, std::span(&len, 1));
  const auto& out = g.value(bigru_outputs(g, s));
  BiGruEncoding<T> r;
  for (Eigen::Index t = 0; t < out.cols(); ++t) r.outputs.push_back(out.col(t));
  r.final_forward = g.value(s.final_forward).col(0);
  r.final_backward = g.value(s.final_backward).col(0);
  return r;
}

#define SCOPEIT_INSTANTIATE_GRU(T)                                                          \
  template struct GruLayerParams<T>;                                                        \
  template struct BiGruParams<T>;                                                           \
  template BiGruStates bigru_forward<T>(Graph<T>&, const BiGruParams<T>&, Var, size_t,      \
                                        std::span<const size_t>);                           \
  template Var bigru_outputs<T>(Graph<T>&, const BiGruStates&);                             \
  template Vector<T> gru_cell<T>(const Vector<T>&, const Vector<T>&, const GruLayerParams<T>&); \
  template BiGruEncoding<T> bigru_encode<T>(const std::vector<Vector<T>>&, const BiGruParams<T>&);

SCOPEIT_INSTANTIATE_GRU(float)
SCOPEIT_INSTANTIATE_GRU(double)

}  // namespace scopeit::nn
