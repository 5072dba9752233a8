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

#include "scopeit/scoper/scoper.h"

#include <algorithm>

#include "scopeit/common/error.h"
#include "scopeit/textprep/replace.h"

namespace scopeit::scoper {

nlohmann::json ScopedMessage::to_json() const {
  return {{"indices", indices}, {"text", text}, {"threshold", threshold}, {"actionable", actionable}};
}

ScopedMessage ScopedMessage::from_json(const nlohmann::json& j) {
  ScopedMessage m;
  try {
    m.indices = j.at("indices").get<std::vector<size_t>>();
    m.text = j.at("text").get<std::string>();
    m.threshold = j.at("threshold").get<double>();
    m.actionable = j.at("actionable").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad scoped message: ") + e.what());
  }
  return m;
}

ScopedMessage scope(const textprep::Document& doc, std::span<const double> scores,
                    double threshold) {
  if (scores.size() != doc.size()) {
    throw AlignmentError("document '" + doc.id + "' has " + std::to_string(doc.size()) +
                         " sentences but " + std::to_string(scores.size()) + " scores");
  }
  ScopedMessage m;
  m.threshold = threshold;
  for (size_t i = 0; i < scores.size(); ++i) {
    if (!(scores[i] > threshold)) continue;
    if (!m.indices.empty()) m.text += ' ';
    m.text += textprep::invert_sentence(doc.sentences[i], static_cast<int>(i), doc.replacements);
    m.indices.push_back(i);
  }
  m.actionable = !m.indices.empty();
  return m;
}

bool is_actionable(std::span<const double> scores, double threshold) {
  return std::any_of(scores.begin(), scores.end(), [&](double s) { return s > threshold; });
}

}  // namespace scopeit::scoper
