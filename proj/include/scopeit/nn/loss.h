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

#ifndef SCOPEIT_NN_LOSS_H_
#define SCOPEIT_NN_LOSS_H_

#include <span>

namespace scopeit::nn {

inline constexpr double kBceEpsilon = 1e-7;

// -sum_i [y_i log p_i + (1 - y_i) log(1 - p_i)] with p clamped to
// [kBceEpsilon, 1 - kBceEpsilon]. Summed, not averaged.
double bce_loss(std::span<const double> probs, std::span<const int> labels);

}  // namespace scopeit::nn

#endif  // SCOPEIT_NN_LOSS_H_
