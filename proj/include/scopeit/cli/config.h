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

#ifndef SCOPEIT_CLI_CONFIG_H_
#define SCOPEIT_CLI_CONFIG_H_

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "scopeit/corpus/corpus.h"
#include "scopeit/model/config.h"
#include "scopeit/model/train.h"
#include "scopeit/scoper/scoper.h"
#include "scopeit/textprep/vocabulary.h"

namespace scopeit::cli {

// Everything a run needs. A JSON file fills it, command-line flags override
// the file, and fields neither mentions keep these defaults.
struct RunConfig {
  // Either one corpus split by `fractions`, or explicit train/validation
  // (and optional test) files.
  std::string corpus;
  std::string train_corpus;
  std::string validation_corpus;
  std::string test_corpus;
  corpus::SplitFractions fractions;

  // Existing vocabulary file. Without one a vocabulary is built from the
  // training sentences.
  std::string vocab;
  textprep::VocabMode vocab_mode = textprep::VocabMode::kWordPiece;
  size_t vocab_size = 30000;

  // Precomputed embedding store; switches the model to precomputed input.
  std::string embedding_store;

  std::string variant = "scopeit";
  // Applied on top of the variant preset.
  nlohmann::json model = nlohmann::json::object();
  model::TrainConfig train;
  double classify_threshold = model::kClassifyThreshold;
  double scope_threshold = scoper::kScopeThreshold;
  // Drives the split, the parameter init and the batch order.
  uint64_t seed = 1;

  // Unknown keys raise ConfigError.
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load(const std::string& path);
  nlohmann::json to_json() const;

  // Variant preset, then `model` overrides, then the seed.
  model::ModelConfig model_config() const;
  model::TrainConfig train_config() const;
  // Checks that named files exist and the combination is coherent, before
  // any long-running work.
  void validate() const;
};

}  // namespace scopeit::cli

#endif  // SCOPEIT_CLI_CONFIG_H_
