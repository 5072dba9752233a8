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

#ifndef SCOPEIT_SCOPER_SCOPER_H_
#define SCOPEIT_SCOPER_SCOPER_H_

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scopeit/textprep/document.h"

namespace scopeit::scoper {

// Operating point for downstream scoping. Classification metrics use
// model::kClassifyThreshold instead.
inline constexpr double kScopeThreshold = 0.01;

struct ScopedMessage {
  // Ascending sentence indices with score > threshold.
  std::vector<size_t> indices;
  // Selected sentences, placeholders restored, joined by single spaces.
  std::string text;
  double threshold = kScopeThreshold;
  bool actionable = false;

  nlohmann::json to_json() const;
  static ScopedMessage from_json(const nlohmann::json& j);
};

// Throws AlignmentError unless there is one score per sentence.
ScopedMessage scope(const textprep::Document& doc, std::span<const double> scores,
                    double threshold = kScopeThreshold);

bool is_actionable(std::span<const double> scores, double threshold = kScopeThreshold);

}  // namespace scopeit::scoper

#endif  // SCOPEIT_SCOPER_SCOPER_H_
