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

#ifndef SCOPEIT_NN_GRADCHECK_H_
#define SCOPEIT_NN_GRADCHECK_H_

#include <functional>
#include <string>
#include <vector>

#include "scopeit/nn/graph.h"
#include "scopeit/nn/parameter.h"

namespace scopeit::nn {

struct TensorGradError {
  std::string name;
  size_t size = 0;
  double analytic_norm = 0;
  double numeric_norm = 0;
  // ||a - n|| / max(||a||, ||n||); 0 when both gradients vanish.
  double relative_error = 0;
};

// Builds the scalar loss into the given graph.
using LossBuilder = std::function<Var(Graph<double>&)>;

// Compares reverse-mode gradients with central differences of the given
// step, one tensor at a time. Parameters are restored before returning.
std::vector<TensorGradError> check_gradients(const ParameterRefs<double>& params,
                                             const LossBuilder& build, double step = 1e-5);

}  // namespace scopeit::nn

#endif  // SCOPEIT_NN_GRADCHECK_H_
