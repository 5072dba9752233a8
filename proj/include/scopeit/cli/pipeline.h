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

#ifndef SCOPEIT_CLI_PIPELINE_H_
#define SCOPEIT_CLI_PIPELINE_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scopeit/cli/config.h"
#include "scopeit/corpus/corpus.h"
#include "scopeit/extractors/extractors.h"
#include "scopeit/model/embedding_store.h"
#include "scopeit/model/metrics.h"
#include "scopeit/model/model.h"
#include "scopeit/model/train.h"

// Glue shared by the subcommands and the acceptance runs.
namespace scopeit::cli {

textprep::Vocabulary corpus_vocabulary(const std::vector<corpus::LabeledDocument>& docs,
                                       textprep::VocabMode mode, size_t size);

std::vector<model::Example> to_examples(const std::vector<corpus::LabeledDocument>& docs,
                                        const model::ScopeItModel& m);

// Train/validation/test documents named by the config; a single corpus is
// split with the config seed.
corpus::CorpusSplit load_split(const RunConfig& rc);

std::unique_ptr<model::EmbeddingStore> load_store(const std::string& path);

struct FitResult {
  model::ScopeItModel model;
  model::TrainResult result;
};

FitResult fit(const RunConfig& rc, const std::vector<corpus::LabeledDocument>& train,
              const std::vector<corpus::LabeledDocument>& validation,
              const model::EmbeddingStore* store = nullptr,
              const model::EpochCallback& on_epoch = {},
              std::optional<textprep::Vocabulary> vocab = std::nullopt);

std::vector<double> document_scores(const model::ScopeItModel& m,
                                    const corpus::LabeledDocument& doc,
                                    const model::EmbeddingStore* store = nullptr);

model::Metrics evaluate_corpus(const model::ScopeItModel& m,
                               const std::vector<corpus::LabeledDocument>& docs, double threshold,
                               const model::EmbeddingStore* store = nullptr);

extractors::Scorer scorer_for(const model::ScopeItModel& m,
                              const model::EmbeddingStore* store = nullptr);

}  // namespace scopeit::cli

#endif  // SCOPEIT_CLI_PIPELINE_H_
