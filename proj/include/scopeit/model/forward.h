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

#ifndef SCOPEIT_MODEL_FORWARD_H_
#define SCOPEIT_MODEL_FORWARD_H_

#include <span>
#include <string>
#include <vector>

#include "scopeit/model/config.h"
#include "scopeit/model/embedding_store.h"
#include "scopeit/model/params.h"
#include "scopeit/nn/graph.h"
#include "scopeit/textprep/document.h"

namespace scopeit::model {

struct ForwardOutput {
  // 1 x S where S is the number of sentences across the batch, documents
  // in order.
  nn::Var logits;
  // e_s per sentence, sentence_dim x S.
  nn::Var sentence;
  // f_s per sentence, 2*inter_hidden x S; unset without the inter encoder.
  nn::Var contextual;
  // Document d owns columns [offsets[d], offsets[d + 1]).
  std::vector<size_t> offsets;
};

// Runs the model over a batch of documents. Sentences are padded to the
// longest sentence for the intra encoder and documents to the longest
// document for the inter encoder; padded steps never reach a valid output.
// `store` is required for precomputed embeddings.
template <typename T>
ForwardOutput forward_batch(nn::Graph<T>& g, const ModelConfig& config,
                            const ScopeItParams<T>& params,
                            std::span<const textprep::TokenizedDocument* const> docs,
                            const EmbeddingStore* store);

// Token vectors of one sentence, E x tokens.
template <typename T>
nn::Matrix<T> embed_sentence(const std::string& doc_id, size_t sentence_index,
                             std::span<const int> tokens, const ModelConfig& config,
                             const ScopeItParams<T>& params, const EmbeddingStore* store);

// e_s = [top forward state at the last token; top backward state at the
// first token].
template <typename T>
nn::Vector<T> encode_sentence(const nn::Matrix<T>& token_vectors, const ScopeItParams<T>& params);

}  // namespace scopeit::model

#endif  // SCOPEIT_MODEL_FORWARD_H_
