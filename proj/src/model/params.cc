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

#include "scopeit/model/params.h"

#include <cmath>
#include <random>

namespace scopeit::model {
namespace {

template <typename U, typename T>
nn::Parameter<U> cast_param(const nn::Parameter<T>& p) {
  return {p.name, p.shape, p.value.template cast<U>(), {}};
}

template <typename U, typename T>
nn::GruLayerParams<U> cast_layer(const nn::GruLayerParams<T>& p) {
  nn::GruLayerParams<U> q;
  q.input_size = p.input_size;
  q.hidden_size = p.hidden_size;
  q.w_ir = cast_param<U>(p.w_ir);
  q.w_iz = cast_param<U>(p.w_iz);
  q.w_in = cast_param<U>(p.w_in);
  q.b_ir = cast_param<U>(p.b_ir);
  q.b_iz = cast_param<U>(p.b_iz);
  q.b_in = cast_param<U>(p.b_in);
  q.w_hr = cast_param<U>(p.w_hr);
  q.w_hz = cast_param<U>(p.w_hz);
  q.w_hn = cast_param<U>(p.w_hn);
  q.b_hr = cast_param<U>(p.b_hr);
  q.b_hz = cast_param<U>(p.b_hz);
  q.b_hn = cast_param<U>(p.b_hn);
  return q;
}

template <typename U, typename T>
nn::BiGruParams<U> cast_bigru(const nn::BiGruParams<T>& p) {
  nn::BiGruParams<U> q;
  q.input_size = p.input_size;
  q.hidden_size = p.hidden_size;
  for (const auto& l : p.forward) q.forward.push_back(cast_layer<U>(l));
  for (const auto& l : p.backward) q.backward.push_back(cast_layer<U>(l));
  return q;
}

}  // namespace

template <typename T>
ScopeItParams<T> ScopeItParams<T>::zeros(const ModelConfig& c) {
  c.validate();
  ScopeItParams p;
  if (c.embedding == EmbeddingKind::kTrainable) {
    p.embedding = nn::Parameter<T>::matrix("embedding", c.vocab_size, c.embedding_dim);
  }
  if (!c.cls_only) {
    p.intra = nn::BiGruParams<T>::create("intra", c.embedding_dim, c.intra_hidden, c.intra_layers);
  }
  if (c.use_inter_aggregator) {
    p.inter = nn::BiGruParams<T>::create("inter", c.sentence_dim(), c.inter_hidden, c.inter_layers);
  }
  p.head_w = nn::Parameter<T>::matrix("head.w", 1, c.head_input_dim());
  p.head_b = nn::Parameter<T>::vector("head.b", 1);
  return p;
}

template <typename T>
ScopeItParams<T> ScopeItParams<T>::initialize(const ModelConfig& c) {
  ScopeItParams p = zeros(c);
  std::mt19937_64 rng(c.seed);
  if (p.embedding) nn::init_normal(*p.embedding, 0.1, rng);
  if (p.intra) p.intra->initialize(rng);
  if (p.inter) p.inter->initialize(rng);
  size_t h = c.use_inter_aggregator ? c.inter_hidden : c.cls_only ? c.embedding_dim : c.intra_hidden;
  nn::init_uniform(p.head_w, 1.0 / std::sqrt(static_cast<double>(h)), rng);
  return p;
}

template <typename T>
nn::ParameterRefs<T> ScopeItParams<T>::all() {
  nn::ParameterRefs<T> out;
  if (embedding) out.push_back(&*embedding);
  if (intra) intra->collect(out);
  if (inter) inter->collect(out);
  out.push_back(&head_w);
  out.push_back(&head_b);
  return out;
}

template <typename T>
std::vector<const nn::Parameter<T>*> ScopeItParams<T>::all() const {
  std::vector<const nn::Parameter<T>*> out;
  if (embedding) out.push_back(&*embedding);
  if (intra) intra->collect(out);
  if (inter) inter->collect(out);
  out.push_back(&head_w);
  out.push_back(&head_b);
  return out;
}

template <typename T>
size_t ScopeItParams<T>::count() const {
  size_t n = 0;
  for (const nn::Parameter<T>* p : all()) n += p->size();
  return n;
}

template <typename T>
template <typename U>
ScopeItParams<U> ScopeItParams<T>::cast() const {
  ScopeItParams<U> q;
  if (embedding) q.embedding = cast_param<U>(*embedding);
  if (intra) q.intra = cast_bigru<U>(*intra);
  if (inter) q.inter = cast_bigru<U>(*inter);
  q.head_w = cast_param<U>(head_w);
  q.head_b = cast_param<U>(head_b);
  return q;
}

template struct ScopeItParams<float>;
template struct ScopeItParams<double>;
template ScopeItParams<double> ScopeItParams<float>::cast<double>() const;
template ScopeItParams<float> ScopeItParams<double>::cast<float>() const;
template ScopeItParams<float> ScopeItParams<float>::cast<float>() const;
template ScopeItParams<double> ScopeItParams<double>::cast<double>() const;

}  // namespace scopeit::model
