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

#include "scopeit/model/scoring.h"

#include <algorithm>
#include <cmath>

#include "scopeit/model/forward.h"

namespace scopeit::model {

double logit_to_probability(double x) {
  double p = x >= 0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
  return std::clamp(p, kScoreEpsilon, 1.0 - kScoreEpsilon);
}

template <typename T>
RelevanceScores score_document(const textprep::TokenizedDocument& doc, const ModelConfig& config,
                               const ScopeItParams<T>& params, const EmbeddingStore* store,
                               const ScoreOptions& options) {
  RelevanceScores out;
  if (doc.size() == 0) return out;
  nn::Graph<T> g(false);
  const textprep::TokenizedDocument* docs[1] = {&doc};
  ForwardOutput f = forward_batch(g, config, params, docs, store);
  const auto& logits = g.value(f.logits);
  for (Eigen::Index i = 0; i < logits.cols(); ++i) {
    out.scores.push_back(logit_to_probability(static_cast<double>(logits(0, i))));
  }
  if (options.keep_embeddings) {
    bool contextual = options.layer == ProbeLayer::kContextual && config.use_inter_aggregator;
    const auto& m = g.value(contextual ? f.contextual : f.sentence);
    for (Eigen::Index i = 0; i < m.cols(); ++i) {
      std::vector<float> v(static_cast<size_t>(m.rows()));
      for (Eigen::Index k = 0; k < m.rows(); ++k) v[static_cast<size_t>(k)] = static_cast<float>(m(k, i));
      out.embeddings.push_back(std::move(v));
    }
  }
  return out;
}

template RelevanceScores score_document<float>(const textprep::TokenizedDocument&,
                                               const ModelConfig&, const ScopeItParams<float>&,
                                               const EmbeddingStore*, const ScoreOptions&);
template RelevanceScores score_document<double>(const textprep::TokenizedDocument&,
                                                const ModelConfig&, const ScopeItParams<double>&,
                                                const EmbeddingStore*, const ScoreOptions&);

}  // namespace scopeit::model
