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

#ifndef SCOPEIT_NN_ADAM_H_
#define SCOPEIT_NN_ADAM_H_

#include <cstdint>
#include <vector>

#include "scopeit/nn/parameter.h"

namespace scopeit::nn {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Moments are kept in the order of the parameter list they were created for.
template <typename T>
struct OptimizerState {
  std::vector<Matrix<T>> m;
  std::vector<Matrix<T>> v;
  int64_t step = 0;
  double lr = 1e-4;

  static OptimizerState create(const ParameterRefs<T>& params, double lr);
};

// One bias-corrected Adam update using each parameter's .grad. Throws
// ShapeMismatch if a gradient or moment does not match its parameter.
template <typename T>
void adam_step(const ParameterRefs<T>& params, OptimizerState<T>& state,
               const AdamConfig& config = {});

extern template struct OptimizerState<float>;
extern template struct OptimizerState<double>;

}  // namespace scopeit::nn

#endif  // SCOPEIT_NN_ADAM_H_
