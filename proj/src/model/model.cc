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

#include "scopeit/model/model.h"

#include "scopeit/common/error.h"
#include "scopeit/common/hash.h"

namespace scopeit::model {

ScopeItModel::ScopeItModel(ModelConfig config, textprep::Vocabulary vocab,
                           ScopeItParams<float> params)
    : config_(std::move(config)), vocab_(std::move(vocab)), params_(std::move(params)) {
  config_.validate();
  if (config_.embedding == EmbeddingKind::kTrainable && config_.vocab_size != vocab_.size()) {
    throw ConfigError("model vocab_size " + std::to_string(config_.vocab_size) +
                      " differs from the vocabulary's " + std::to_string(vocab_.size()));
  }
}

ScopeItModel ScopeItModel::create(ModelConfig config, textprep::Vocabulary vocab) {
  if (config.embedding == EmbeddingKind::kTrainable) config.vocab_size = vocab.size();
  ScopeItParams<float> params = ScopeItParams<float>::initialize(config);
  return ScopeItModel(config, std::move(vocab), std::move(params));
}

nn::Container ScopeItModel::to_container() const {
  nlohmann::json header = {
      {"format_version", kCheckpointFormatVersion},
      {"precision", "f32"},
      {"model", config_},
      {"parameter_count", parameter_count(config_)},
      {"parameter_count_formula", kParameterCountFormula},
      {"vocabulary",
       {{"id", vocab_.id()}, {"mode", textprep::to_string(vocab_.mode())}, {"tokens", vocab_.tokens()}}}};
  nn::Container c;
  c.header = header.dump();
  c.tensors = nn::export_tensors(params_.all());
  return c;
}

ScopeItModel ScopeItModel::from_container(const nn::Container& c) {
  nlohmann::json h = c.header_json();
  try {
    if (h.at("format_version").get<int>() != kCheckpointFormatVersion) {
      throw FormatError("unsupported checkpoint format_version");
    }
    if (h.at("precision").get<std::string>() != "f32") {
      throw FormatError("unsupported checkpoint precision");
    }
    ModelConfig config = h.at("model").get<ModelConfig>();
    const auto& v = h.at("vocabulary");
    textprep::Vocabulary vocab(v.at("tokens").get<std::vector<std::string>>(),
                               textprep::vocab_mode_from_string(v.at("mode").get<std::string>()));
    if (vocab.id() != v.at("id").get<std::string>()) {
      throw FormatError("checkpoint vocabulary does not match its recorded id");
    }
    if (h.at("parameter_count").get<size_t>() != parameter_count(config)) {
      throw FormatError("checkpoint parameter_count disagrees with its model config");
    }
    ScopeItParams<float> params = ScopeItParams<float>::zeros(config);
    nn::import_tensors(c.tensors, params.all());
    return ScopeItModel(config, std::move(vocab), std::move(params));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad checkpoint header: ") + e.what());
  }
}

ScopeItModel ScopeItModel::load(const std::string& path) {
  return from_container(nn::load_container(path));
}

void ScopeItModel::save(const std::string& path) const { nn::save_container(path, to_container()); }

void ScopeItModel::check_store(const EmbeddingStore* store) const {
  if (store && store->vocab_hash() != vocab_.hash()) {
    throw VocabularyMismatch("embedding store was exported for vocabulary fnv1a64:" +
                             hex64(store->vocab_hash()) + ", model uses " + vocab_.id());
  }
}

RelevanceScores ScopeItModel::score(const textprep::TokenizedDocument& doc,
                                    const EmbeddingStore* store,
                                    const ScoreOptions& options) const {
  if (doc.vocab_id != vocab_.id()) {
    throw VocabularyMismatch("document '" + doc.doc_id + "' was tokenized with " +
                             doc.vocab_id + ", model uses " + vocab_.id());
  }
  check_store(store);
  return score_document(doc, config_, params_, store, options);
}

textprep::TokenizedDocument ScopeItModel::tokenize(const textprep::Document& doc) const {
  return textprep::tokenize_document(doc, vocab_);
}

}  // namespace scopeit::model
