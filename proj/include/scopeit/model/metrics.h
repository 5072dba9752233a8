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

#ifndef SCOPEIT_MODEL_METRICS_H_
#define SCOPEIT_MODEL_METRICS_H_

#include <cstddef>
#include <span>

#include <nlohmann/json.hpp>

namespace scopeit::model {

// Confusion counts for the relevant class. Precision is 0 when nothing is
// predicted relevant, recall is 0 when nothing is relevant, and F1 is 0
// when both are 0.
struct Metrics {
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;
  size_t tn = 0;

  // Scores strictly above the threshold count as predicted relevant.
  void add(std::span<const double> scores, std::span<const int> labels, double threshold);
  void merge(const Metrics& other);

  size_t total() const { return tp + fp + fn + tn; }
  double precision() const;
  double recall() const;
  double f1() const;
  nlohmann::json to_json() const;
};

}  // namespace scopeit::model

#endif  // SCOPEIT_MODEL_METRICS_H_
