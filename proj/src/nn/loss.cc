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

#include "scopeit/nn/loss.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "scopeit/common/error.h"

namespace scopeit::nn {

double bce_loss(std::span<const double> probs, std::span<const int> labels) {
  if (probs.size() != labels.size()) {
    throw LengthMismatch("bce_loss got " + std::to_string(probs.size()) + " probabilities and " +
                         std::to_string(labels.size()) + " labels");
  }
  double total = 0;
  for (size_t i = 0; i < probs.size(); ++i) {
    double p = std::clamp(probs[i], kBceEpsilon, 1.0 - kBceEpsilon);
    total -= labels[i] ? std::log(p) : std::log1p(-p);
  }
  return total;
}

}  // namespace scopeit::nn
