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

#include "scopeit/model/metrics.h"

#include <string>

#include "scopeit/common/error.h"

namespace scopeit::model {

void Metrics::add(std::span<const double> scores, std::span<const int> labels, double threshold) {
  if (scores.size() != labels.size()) {
    throw LengthMismatch(std::to_string(scores.size()) + " scores for " +
                         std::to_string(labels.size()) + " labels");
  }
  for (size_t i = 0; i < scores.size(); ++i) {
    bool predicted = scores[i] > threshold;
    bool gold = labels[i] != 0;
    if (predicted && gold) ++tp;
    else if (predicted) ++fp;
    else if (gold) ++fn;
    else ++tn;
  }
}

void Metrics::merge(const Metrics& o) {
  tp += o.tp;
  fp += o.fp;
  fn += o.fn;
  tn += o.tn;
}

double Metrics::precision() const {
  return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double Metrics::recall() const {
  return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double Metrics::f1() const {
  double p = precision();
  double r = recall();
  return p + r == 0 ? 0.0 : 2 * p * r / (p + r);
}

nlohmann::json Metrics::to_json() const {
  return {{"precision", precision()}, {"recall", recall()}, {"f1", f1()},
          {"tp", tp},                 {"fp", fp},           {"fn", fn},
          {"tn", tn}};
}

}  // namespace scopeit::model
