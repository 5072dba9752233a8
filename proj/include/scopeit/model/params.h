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

#ifndef SCOPEIT_MODEL_PARAMS_H_
#define SCOPEIT_MODEL_PARAMS_H_

#include <optional>
#include <vector>

#include "scopeit/model/config.h"
#include "scopeit/nn/gru.h"
#include "scopeit/nn/parameter.h"

namespace scopeit::model {

template <typename T>
struct ScopeItParams {
  // (vocab x E), present for trainable embeddings.
  std::optional<nn::Parameter<T>> embedding;
  std::optional<nn::BiGruParams<T>> intra;
  std::optional<nn::BiGruParams<T>> inter;
  // (1 x head_input_dim) and (1).
  nn::Parameter<T> head_w;
  nn::Parameter<T> head_b;

  // Zero-valued tensors with the shapes the config implies.
  static ScopeItParams zeros(const ModelConfig& config);
  // Seeded initialization: embeddings normal(0, 0.1), weights
  // uniform(-1/sqrt(H), 1/sqrt(H)) with H the hidden size of the layer's
  // encoder, biases zero.
  static ScopeItParams initialize(const ModelConfig& config);

  nn::ParameterRefs<T> all();
  std::vector<const nn::Parameter<T>*> all() const;
  size_t count() const;

  template <typename U>
  ScopeItParams<U> cast() const;
};

extern template struct ScopeItParams<float>;
extern template struct ScopeItParams<double>;

}  // namespace scopeit::model

#endif  // SCOPEIT_MODEL_PARAMS_H_
