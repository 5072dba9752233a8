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

#ifndef SCOPEIT_MODEL_TRAIN_H_
#define SCOPEIT_MODEL_TRAIN_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "scopeit/model/config.h"
#include "scopeit/model/embedding_store.h"
#include "scopeit/model/metrics.h"
#include "scopeit/model/params.h"
#include "scopeit/nn/graph.h"
#include "scopeit/textprep/document.h"

namespace scopeit::model {

inline constexpr double kClassifyThreshold = 0.5;

struct Example {
  textprep::TokenizedDocument doc;
  std::vector<int> labels;
};

struct TrainConfig {
  double lr = 1e-4;
  int epochs = 50;
  size_t batch_size = 8;
  uint64_t seed = 1;
  double anneal_factor = 0.5;
  int plateau_patience = 5;
  int early_stop_patience = 8;
  double classify_threshold = kClassifyThreshold;
};

// Sum over the batch's documents of each document's summed sentence BCE,
// divided by the number of documents. A 1x1 node.
template <typename T>
nn::Var batch_loss(nn::Graph<T>& g, const ModelConfig& config, const ScopeItParams<T>& params,
                   std::span<const Example* const> batch, const EmbeddingStore* store);

void to_json(nlohmann::json& j, const TrainConfig& c);
// Missing keys keep their defaults; unknown keys raise ConfigError.
void from_json(const nlohmann::json& j, TrainConfig& c);

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0;
  double val_loss = 0;
  double lr = 0;
  double val_f1 = 0;
  bool improved = false;
};

nlohmann::json to_json(const EpochRecord& r);

struct TrainResult {
  // Parameters after the epoch with the lowest validation loss.
  ScopeItParams<float> params;
  std::vector<EpochRecord> log;
  int best_epoch = 0;
  double best_val_loss = 0;
  bool early_stopped = false;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

// Adam on the mean over documents of each document's summed binary cross
// entropy, with plateau annealing and early stopping on validation loss.
// Starts from `initial` when given, otherwise from config.seed.
TrainResult train(const ModelConfig& config, std::span<const Example> train_set,
                  std::span<const Example> val_set, const TrainConfig& tc,
                  const EmbeddingStore* store = nullptr, const EpochCallback& on_epoch = {},
                  const ScopeItParams<float>* initial = nullptr);

// Mean per-document loss without gradient recording.
double mean_loss(const ModelConfig& config, const ScopeItParams<float>& params,
                 std::span<const Example> examples, const EmbeddingStore* store,
                 size_t batch_size = 8);

// Micro-averaged over every sentence. Throws EmptyCorpus for no examples.
Metrics evaluate(const ModelConfig& config, const ScopeItParams<float>& params,
                 std::span<const Example> examples, double threshold = kClassifyThreshold,
                 const EmbeddingStore* store = nullptr);

}  // namespace scopeit::model

#endif  // SCOPEIT_MODEL_TRAIN_H_
