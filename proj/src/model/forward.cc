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

#include "scopeit/model/forward.h"

#include <algorithm>

#include "scopeit/common/error.h"
#include "scopeit/nn/gru.h"

namespace scopeit::model {
namespace {

const EmbeddingStore& require_store(const ModelConfig& config, const EmbeddingStore* store) {
  if (!store) throw MissingEmbedding("precomputed embeddings requested without a store");
  if (store->dim() != config.embedding_dim) {
    throw ConfigError("embedding store dim " + std::to_string(store->dim()) +
                      " differs from model embedding_dim " + std::to_string(config.embedding_dim));
  }
  return *store;
}

const SentenceVectors& stored_sentence(const EmbeddingStore& store, const std::string& doc_id,
                                       size_t index, size_t tokens, bool need_cls) {
  const SentenceVectors& s = store.at(doc_id, index);
  if (need_cls) {
    if (s.cls.empty()) {
      throw MissingEmbedding("no CLS vector for sentence " + std::to_string(index) + " of '" +
                             doc_id + "'");
    }
  } else if (s.token_count != tokens) {
    throw TokenCountMismatch("sentence " + std::to_string(index) + " of '" + doc_id + "' has " +
                             std::to_string(tokens) + " tokens but the store holds " +
                             std::to_string(s.token_count) + " vectors");
  }
  return s;
}

}  // namespace

template <typename T>
ForwardOutput forward_batch(nn::Graph<T>& g, const ModelConfig& config,
                            const ScopeItParams<T>& params,
                            std::span<const textprep::TokenizedDocument* const> docs,
                            const EmbeddingStore* store) {
  using Mat = nn::Matrix<T>;
  if (docs.empty()) throw EmptySequence("forward over an empty batch");
  ForwardOutput out;
  out.offsets.push_back(0);
  size_t max_tokens = 0;
  size_t max_sentences = 0;
  std::vector<size_t> lengths;
  for (const textprep::TokenizedDocument* d : docs) {
    if (d->size() == 0) throw EmptySequence("document '" + d->doc_id + "' has no sentences");
    for (size_t i = 0; i < d->size(); ++i) {
      size_t l = d->sentence_tokens[i].size();
      if (l == 0) {
        throw EmptySentence("sentence " + std::to_string(i) + " of '" + d->doc_id +
                            "' has no tokens");
      }
      lengths.push_back(l);
      max_tokens = std::max(max_tokens, l);
    }
    max_sentences = std::max(max_sentences, d->size());
    out.offsets.push_back(lengths.size());
  }
  const size_t S = lengths.size();
  const auto Se = static_cast<Eigen::Index>(S);
  const size_t E = config.embedding_dim;

  if (config.cls_only) {
    const EmbeddingStore& st = require_store(config, store);
    Mat cls(static_cast<Eigen::Index>(E), Se);
    size_t s = 0;
    for (const textprep::TokenizedDocument* d : docs) {
      for (size_t i = 0; i < d->size(); ++i, ++s) {
        const SentenceVectors& v = stored_sentence(st, d->doc_id, i, 0, true);
        for (size_t k = 0; k < E; ++k) cls(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(s)) = v.cls[k];
      }
    }
    out.sentence = g.constant(std::move(cls));
  } else {
    nn::Var inputs;
    if (config.embedding == EmbeddingKind::kTrainable) {
      std::vector<int> ids(max_tokens * S, -1);
      size_t s = 0;
      for (const textprep::TokenizedDocument* d : docs) {
        for (const std::vector<int>& sent : d->sentence_tokens) {
          for (size_t t = 0; t < sent.size(); ++t) ids[t * S + s] = sent[t];
          ++s;
        }
      }
      inputs = g.lookup(g.param(*params.embedding), ids);
    } else {
      const EmbeddingStore& st = require_store(config, store);
      Mat x = Mat::Zero(static_cast<Eigen::Index>(E), static_cast<Eigen::Index>(max_tokens * S));
      size_t s = 0;
      for (const textprep::TokenizedDocument* d : docs) {
        for (size_t i = 0; i < d->size(); ++i, ++s) {
          const SentenceVectors& v = stored_sentence(st, d->doc_id, i, lengths[s], false);
          for (size_t t = 0; t < lengths[s]; ++t) {
            const float* row = v.token(t, E);
            auto col = x.col(static_cast<Eigen::Index>(t * S + s));
            for (size_t k = 0; k < E; ++k) col(static_cast<Eigen::Index>(k)) = static_cast<T>(row[k]);
          }
        }
      }
      inputs = g.constant(std::move(x));
    }
    nn::BiGruStates states = nn::bigru_forward(g, *params.intra, inputs, max_tokens, lengths);
    nn::Var finals[2] = {states.final_forward, states.final_backward};
    out.sentence = g.concat_rows(finals);
  }

  nn::Var head_in = out.sentence;
  if (config.use_inter_aggregator) {
    const size_t B = docs.size();
    std::vector<int> to_steps(max_sentences * B, -1);
    std::vector<size_t> doc_lengths;
    for (size_t d = 0; d < B; ++d) {
      size_t m = docs[d]->size();
      doc_lengths.push_back(m);
      for (size_t t = 0; t < m; ++t) to_steps[t * B + d] = static_cast<int>(out.offsets[d] + t);
    }
    nn::Var seq = g.gather_cols(out.sentence, to_steps);
    nn::BiGruStates states = nn::bigru_forward(g, *params.inter, seq, max_sentences, doc_lengths);
    nn::Var per_step = nn::bigru_outputs(g, states);
    std::vector<int> back(S);
    for (size_t d = 0; d < B; ++d) {
      for (size_t t = 0; t < docs[d]->size(); ++t) {
        back[out.offsets[d] + t] = static_cast<int>(t * B + d);
      }
    }
    out.contextual = g.gather_cols(per_step, back);
    head_in = out.contextual;
  }
  out.logits = g.affine(g.param(params.head_w), head_in, g.param(params.head_b));
  return out;
}

template <typename T>
nn::Matrix<T> embed_sentence(const std::string& doc_id, size_t sentence_index,
                             std::span<const int> tokens, const ModelConfig& config,
                             const ScopeItParams<T>& params, const EmbeddingStore* store) {
  if (tokens.empty()) {
    throw EmptySentence("sentence " + std::to_string(sentence_index) + " of '" + doc_id +
                        "' has no tokens");
  }
  const auto E = static_cast<Eigen::Index>(config.embedding_dim);
  nn::Matrix<T> out(E, static_cast<Eigen::Index>(tokens.size()));
  if (config.embedding == EmbeddingKind::kTrainable) {
    const auto& table = params.embedding->value;
    for (size_t t = 0; t < tokens.size(); ++t) {
      if (tokens[t] < 0 || tokens[t] >= table.rows()) {
        throw ShapeMismatch("token id " + std::to_string(tokens[t]) + " outside the table");
      }
      out.col(static_cast<Eigen::Index>(t)) = table.row(tokens[t]).transpose();
    }
    return out;
  }
  const EmbeddingStore& st = require_store(config, store);
  const SentenceVectors& v = stored_sentence(st, doc_id, sentence_index, tokens.size(), false);
  for (size_t t = 0; t < tokens.size(); ++t) {
    for (Eigen::Index k = 0; k < E; ++k) {
      out(k, static_cast<Eigen::Index>(t)) = static_cast<T>(v.token(t, config.embedding_dim)[k]);
    }
  }
  return out;
}

template <typename T>
nn::Vector<T> encode_sentence(const nn::Matrix<T>& token_vectors, const ScopeItParams<T>& params) {
  if (token_vectors.cols() == 0) throw EmptySentence("encode_sentence of an empty sentence");
  if (!params.intra) throw ConfigError("model has no intra-sentence encoder");
  std::vector<nn::Vector<T>> seq;
  for (Eigen::Index t = 0; t < token_vectors.cols(); ++t) seq.push_back(token_vectors.col(t));
  nn::BiGruEncoding<T> enc = nn::bigru_encode(seq, *params.intra);
  nn::Vector<T> e(enc.final_forward.size() + enc.final_backward.size());
  e << enc.final_forward, enc.final_backward;
  return e;
}

#define SCOPEIT_INSTANTIATE_FORWARD(T)                                                       \
  template ForwardOutput forward_batch<T>(nn::Graph<T>&, const ModelConfig&,                 \
                                          const ScopeItParams<T>&,                           \
                                          std::span<const textprep::TokenizedDocument* const>, \
                                          const EmbeddingStore*);                            \
  template nn::Matrix<T> embed_sentence<T>(const std::string&, size_t, std::span<const int>, \
                                           const ModelConfig&, const ScopeItParams<T>&,     \
                                           const EmbeddingStore*);                           \
  template nn::Vector<T> encode_sentence<T>(const nn::Matrix<T>&, const ScopeItParams<T>&);

SCOPEIT_INSTANTIATE_FORWARD(float)
SCOPEIT_INSTANTIATE_FORWARD(double)

}  // namespace scopeit::model
