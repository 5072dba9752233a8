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

#ifndef SCOPEIT_MODEL_SCORING_H_
#define SCOPEIT_MODEL_SCORING_H_

#include <vector>

#include "scopeit/model/config.h"
#include "scopeit/model/embedding_store.h"
#include "scopeit/model/params.h"
#include "scopeit/textprep/document.h"

namespace scopeit::model {

// Emitted probabilities are clamped to [kScoreEpsilon, 1 - kScoreEpsilon].
inline constexpr double kScoreEpsilon = 1e-7;

enum class ProbeLayer { kContextual, kSentence };

struct ScoreOptions {
  bool keep_embeddings = false;
  // f_s by default; e_s on request. Without the inter encoder only e_s
  // exists and is returned either way.
  ProbeLayer layer = ProbeLayer::kContextual;
};

struct RelevanceScores {
  std::vector<double> scores;
  std::vector<std::vector<float>> embeddings;

  size_t size() const { return scores.size(); }
};

// A document with no sentences scores as empty.
template <typename T>
RelevanceScores score_document(const textprep::TokenizedDocument& doc, const ModelConfig& config,
                               const ScopeItParams<T>& params, const EmbeddingStore* store,
                               const ScoreOptions& options = {});

double logit_to_probability(double logit);

}  // namespace scopeit::model

#endif  // SCOPEIT_MODEL_SCORING_H_
