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

#ifndef SCOPEIT_MODEL_CONFIG_H_
#define SCOPEIT_MODEL_CONFIG_H_

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace scopeit::model {

enum class EmbeddingKind { kTrainable, kPrecomputed };

std::string_view to_string(EmbeddingKind kind);
EmbeddingKind embedding_kind_from_string(std::string_view s);

struct ModelConfig {
  EmbeddingKind embedding = EmbeddingKind::kTrainable;
  // Rows of the trainable table; ignored for precomputed embeddings.
  size_t vocab_size = 0;
  size_t embedding_dim = 128;
  size_t intra_layers = 2;
  size_t intra_hidden = 128;
  size_t inter_layers = 2;
  size_t inter_hidden = 128;
  bool use_inter_aggregator = true;
  // Sentence embedding is the store's per-sentence CLS vector; the intra
  // encoder is absent. Requires precomputed embeddings.
  bool cls_only = false;
  uint64_t seed = 1;

  // Width of e_s.
  size_t sentence_dim() const { return cls_only ? embedding_dim : 2 * intra_hidden; }
  // Width of the vector the head projects: f_s, or e_s without the inter
  // encoder.
  size_t head_input_dim() const {
    return use_inter_aggregator ? 2 * inter_hidden : sentence_dim();
  }

  // Throws ConfigError for unusable combinations.
  void validate() const;
};

// Named presets: "scopeit", "no-inter", "seq2seq", "cls-only".
ModelConfig variant_config(std::string_view name);

// Number of trainable scalars:
//   table  V*E                    (trainable embeddings only)
//   intra  sum over layers of 2 * 3 * (H*in + H*H + 2H), in = E then 2H
//   inter  same with in = width of e_s, then 2H        (if enabled)
//   head   width of its input + 1
size_t parameter_count(const ModelConfig& config);
inline constexpr std::string_view kParameterCountFormula =
    "V*E [trainable] + sum_layers 6*(H*in + H*H + 2*H) per encoder + (head_in + 1)";

void to_json(nlohmann::json& j, const ModelConfig& c);
// Missing keys keep their defaults; unknown keys raise ConfigError.
void from_json(const nlohmann::json& j, ModelConfig& c);

}  // namespace scopeit::model

#endif  // SCOPEIT_MODEL_CONFIG_H_
