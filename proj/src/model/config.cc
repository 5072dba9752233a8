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

#include "scopeit/model/config.h"

#include <set>

#include "scopeit/common/error.h"
#include "scopeit/nn/gru.h"

namespace scopeit::model {

std::string_view to_string(EmbeddingKind kind) {
  return kind == EmbeddingKind::kTrainable ? "trainable" : "precomputed";
}

EmbeddingKind embedding_kind_from_string(std::string_view s) {
  if (s == "trainable") return EmbeddingKind::kTrainable;
  if (s == "precomputed") return EmbeddingKind::kPrecomputed;
  throw ConfigError("unknown embedding kind '" + std::string(s) + "'");
}

void ModelConfig::validate() const {
  if (embedding_dim == 0) throw ConfigError("embedding_dim must be positive");
  if (embedding == EmbeddingKind::kTrainable && vocab_size < 4) {
    throw ConfigError("trainable embeddings need a vocabulary of at least the reserved tokens");
  }
  if (cls_only && embedding != EmbeddingKind::kPrecomputed) {
    throw ConfigError("cls_only needs precomputed embeddings");
  }
  if (!cls_only && (intra_layers == 0 || intra_hidden == 0)) {
    throw ConfigError("intra encoder needs at least one layer and a positive hidden size");
  }
  if (use_inter_aggregator && (inter_layers == 0 || inter_hidden == 0)) {
    throw ConfigError("inter encoder needs at least one layer and a positive hidden size");
  }
}

ModelConfig variant_config(std::string_view name) {
  ModelConfig c;
  if (name == "scopeit") return c;
  if (name == "no-inter") {
    c.use_inter_aggregator = false;
    return c;
  }
  if (name == "seq2seq") return c;
  if (name == "cls-only") {
    c.embedding = EmbeddingKind::kPrecomputed;
    c.cls_only = true;
    return c;
  }
  throw ConfigError("unknown model variant '" + std::string(name) + "'");
}

size_t parameter_count(const ModelConfig& c) {
  size_t n = 0;
  if (c.embedding == EmbeddingKind::kTrainable) n += c.vocab_size * c.embedding_dim;
  if (!c.cls_only) n += nn::bigru_size(c.embedding_dim, c.intra_hidden, c.intra_layers);
  if (c.use_inter_aggregator) n += nn::bigru_size(c.sentence_dim(), c.inter_hidden, c.inter_layers);
  n += c.head_input_dim() + 1;
  return n;
}

void to_json(nlohmann::json& j, const ModelConfig& c) {
  j = nlohmann::json{{"embedding", to_string(c.embedding)},
                     {"vocab_size", c.vocab_size},
                     {"embedding_dim", c.embedding_dim},
                     {"intra_layers", c.intra_layers},
                     {"intra_hidden", c.intra_hidden},
                     {"inter_layers", c.inter_layers},
                     {"inter_hidden", c.inter_hidden},
                     {"use_inter_aggregator", c.use_inter_aggregator},
                     {"cls_only", c.cls_only},
                     {"seed", c.seed}};
}

void from_json(const nlohmann::json& j, ModelConfig& c) {
  static const std::set<std::string> kKeys = {
      "embedding",    "vocab_size",   "embedding_dim",        "intra_layers", "intra_hidden",
      "inter_layers", "inter_hidden", "use_inter_aggregator", "cls_only",     "seed"};
  if (!j.is_object()) throw ConfigError("model config must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!kKeys.count(k)) throw ConfigError("unknown model config key '" + k + "'");
  }
  try {
    if (j.contains("embedding")) {
      c.embedding = embedding_kind_from_string(j.at("embedding").get<std::string>());
    }
    auto read = [&j](const char* key, auto& field) {
      if (j.contains(key)) j.at(key).get_to(field);
    };
    read("vocab_size", c.vocab_size);
    read("embedding_dim", c.embedding_dim);
    read("intra_layers", c.intra_layers);
    read("intra_hidden", c.intra_hidden);
    read("inter_layers", c.inter_layers);
    read("inter_hidden", c.inter_hidden);
    read("use_inter_aggregator", c.use_inter_aggregator);
    read("cls_only", c.cls_only);
    read("seed", c.seed);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad model config: ") + e.what());
  }
}

}  // namespace scopeit::model
