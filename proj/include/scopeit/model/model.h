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

#ifndef SCOPEIT_MODEL_MODEL_H_
#define SCOPEIT_MODEL_MODEL_H_

#include <string>

#include "scopeit/model/config.h"
#include "scopeit/model/embedding_store.h"
#include "scopeit/model/params.h"
#include "scopeit/model/scoring.h"
#include "scopeit/nn/container.h"
#include "scopeit/textprep/document.h"
#include "scopeit/textprep/vocabulary.h"

namespace scopeit::model {

inline constexpr int kCheckpointFormatVersion = 1;

// A trained model bound to the vocabulary it was trained with. The
// checkpoint embeds the vocabulary, so a loaded model tokenizes on its own.
class ScopeItModel {
 public:
  ScopeItModel(ModelConfig config, textprep::Vocabulary vocab, ScopeItParams<float> params);

  // Freshly initialized from config.seed; vocab_size follows the vocabulary
  // for trainable embeddings.
  static ScopeItModel create(ModelConfig config, textprep::Vocabulary vocab);

  static ScopeItModel from_container(const nn::Container& c);
  static ScopeItModel load(const std::string& path);
  nn::Container to_container() const;
  void save(const std::string& path) const;

  // Throws VocabularyMismatch when the document was tokenized with another
  // vocabulary or the store was exported for one.
  RelevanceScores score(const textprep::TokenizedDocument& doc, const EmbeddingStore* store = nullptr,
                        const ScoreOptions& options = {}) const;
  textprep::TokenizedDocument tokenize(const textprep::Document& doc) const;
  void check_store(const EmbeddingStore* store) const;

  const ModelConfig& config() const { return config_; }
  const textprep::Vocabulary& vocab() const { return vocab_; }
  const ScopeItParams<float>& params() const { return params_; }
  ScopeItParams<float>& params() { return params_; }

 private:
  ModelConfig config_;
  textprep::Vocabulary vocab_;
  ScopeItParams<float> params_;
};

}  // namespace scopeit::model

#endif  // SCOPEIT_MODEL_MODEL_H_
