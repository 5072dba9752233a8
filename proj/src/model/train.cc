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

#include "scopeit/model/train.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include <spdlog/spdlog.h>

#include "scopeit/common/error.h"
#include "scopeit/model/forward.h"
#include "scopeit/model/scoring.h"
#include "scopeit/nn/adam.h"
#include "scopeit/nn/schedule.h"

namespace scopeit::model {
namespace {

using Mat = nn::Matrix<float>;

void check_labels(std::span<const Example> examples) {
  for (const Example& e : examples) {
    if (e.labels.size() != e.doc.size()) {
      throw LabelMisalignment("document '" + e.doc.doc_id + "' has " +
                              std::to_string(e.doc.size()) + " sentences and " +
                              std::to_string(e.labels.size()) + " labels");
    }
    if (e.doc.size() == 0) throw EmptySequence("document '" + e.doc.doc_id + "' is empty");
  }
}

std::vector<const Example*> pointers(std::span<const Example> examples) {
  std::vector<const Example*> out;
  for (const Example& e : examples) out.push_back(&e);
  return out;
}

}  // namespace

template <typename T>
nn::Var batch_loss(nn::Graph<T>& g, const ModelConfig& config, const ScopeItParams<T>& params,
                   std::span<const Example* const> batch, const EmbeddingStore* store) {
  using M = nn::Matrix<T>;
  std::vector<const textprep::TokenizedDocument*> docs;
  size_t sentences = 0;
  for (const Example* e : batch) {
    docs.push_back(&e->doc);
    sentences += e->doc.size();
  }
  ForwardOutput out = forward_batch(g, config, params, docs, store);
  M targets(1, static_cast<Eigen::Index>(sentences));
  M weights = M::Constant(1, static_cast<Eigen::Index>(sentences),
                          T(1) / static_cast<T>(batch.size()));
  Eigen::Index k = 0;
  for (const Example* e : batch) {
    for (int y : e->labels) targets(0, k++) = static_cast<T>(y);
  }
  return g.bce_with_logits(out.logits, targets, weights);
}

template nn::Var batch_loss<float>(nn::Graph<float>&, const ModelConfig&,
                                   const ScopeItParams<float>&, std::span<const Example* const>,
                                   const EmbeddingStore*);
template nn::Var batch_loss<double>(nn::Graph<double>&, const ModelConfig&,
                                    const ScopeItParams<double>&, std::span<const Example* const>,
                                    const EmbeddingStore*);

void to_json(nlohmann::json& j, const TrainConfig& c) {
  j = nlohmann::json{{"lr", c.lr},
                     {"epochs", c.epochs},
                     {"batch_size", c.batch_size},
                     {"seed", c.seed},
                     {"anneal_factor", c.anneal_factor},
                     {"plateau_patience", c.plateau_patience},
                     {"early_stop_patience", c.early_stop_patience},
                     {"classify_threshold", c.classify_threshold}};
}

void from_json(const nlohmann::json& j, TrainConfig& c) {
  static const std::set<std::string> kKeys = {"lr",
                                              "epochs",
                                              "batch_size",
                                              "seed",
                                              "anneal_factor",
                                              "plateau_patience",
                                              "early_stop_patience",
                                              "classify_threshold"};
  if (!j.is_object()) throw ConfigError("train config must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!kKeys.count(k)) throw ConfigError("unknown train config key '" + k + "'");
  }
  try {
    auto read = [&j](const char* key, auto& field) {
      if (j.contains(key)) j.at(key).get_to(field);
    };
    read("lr", c.lr);
    read("epochs", c.epochs);
    read("batch_size", c.batch_size);
    read("seed", c.seed);
    read("anneal_factor", c.anneal_factor);
    read("plateau_patience", c.plateau_patience);
    read("early_stop_patience", c.early_stop_patience);
    read("classify_threshold", c.classify_threshold);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad train config: ") + e.what());
  }
  if (c.lr <= 0 || c.epochs <= 0 || c.batch_size == 0) {
    throw ConfigError("lr, epochs and batch_size must be positive");
  }
}

nlohmann::json to_json(const EpochRecord& r) {
  return {{"epoch", r.epoch}, {"train_loss", r.train_loss}, {"val_loss", r.val_loss},
          {"lr", r.lr},       {"val_f1", r.val_f1},         {"improved", r.improved}};
}

double mean_loss(const ModelConfig& config, const ScopeItParams<float>& params,
                 std::span<const Example> examples, const EmbeddingStore* store,
                 size_t batch_size) {
  if (examples.empty()) throw EmptyCorpus("loss over an empty set");
  check_labels(examples);
  std::vector<const Example*> all = pointers(examples);
  double total = 0;
  for (size_t i = 0; i < all.size(); i += batch_size) {
    size_t n = std::min(batch_size, all.size() - i);
    nn::Graph<float> g(false);
    nn::Var loss = batch_loss(g, config, params, std::span(all).subspan(i, n), store);
    total += static_cast<double>(g.scalar(loss)) * static_cast<double>(n);
  }
  return total / static_cast<double>(all.size());
}

Metrics evaluate(const ModelConfig& config, const ScopeItParams<float>& params,
                 std::span<const Example> examples, double threshold,
                 const EmbeddingStore* store) {
  if (examples.empty()) throw EmptyCorpus("evaluation over an empty corpus");
  check_labels(examples);
  Metrics m;
  for (const Example& e : examples) {
    RelevanceScores s = score_document(e.doc, config, params, store);
    m.add(s.scores, e.labels, threshold);
  }
  return m;
}

TrainResult train(const ModelConfig& config, std::span<const Example> train_set,
                  std::span<const Example> val_set, const TrainConfig& tc,
                  const EmbeddingStore* store, const EpochCallback& on_epoch,
                  const ScopeItParams<float>* initial) {
  if (train_set.empty()) throw EmptyCorpus("training set is empty");
  if (val_set.empty()) throw EmptyCorpus("validation set is empty");
  check_labels(train_set);
  check_labels(val_set);

  ScopeItParams<float> params = initial ? *initial : ScopeItParams<float>::initialize(config);
  nn::ParameterRefs<float> refs = params.all();
  nn::OptimizerState<float> opt = nn::OptimizerState<float>::create(refs, tc.lr);
  nn::LrSchedule sched;
  sched.lr = tc.lr;
  sched.anneal_factor = tc.anneal_factor;
  sched.plateau_patience = tc.plateau_patience;
  sched.early_stop_patience = tc.early_stop_patience;

  std::mt19937_64 rng(tc.seed);
  std::vector<const Example*> order = pointers(train_set);
  TrainResult result;
  result.best_val_loss = std::numeric_limits<double>::infinity();

  for (int epoch = 1; epoch <= tc.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double train_total = 0;
    for (size_t i = 0; i < order.size(); i += tc.batch_size) {
      size_t n = std::min(tc.batch_size, order.size() - i);
      {
        nn::Graph<float> g(true);
        nn::Var root = batch_loss(g, config, params, std::span(order).subspan(i, n), store);
        float loss = g.scalar(root);
        if (!std::isfinite(loss)) {
          throw NonFiniteLoss("non-finite loss at epoch " + std::to_string(epoch) + ", batch " +
                              std::to_string(i / tc.batch_size) + ", lr " +
                              std::to_string(opt.lr));
        }
        train_total += static_cast<double>(loss) * static_cast<double>(n);
        g.backward(root);
        for (nn::Parameter<float>* p : refs) {
          const Mat* grad = g.gradient(*p);
          if (grad) {
            p->grad = *grad;
          } else {
            p->zero_grad();
          }
        }
      }
      nn::adam_step(refs, opt);
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = train_total / static_cast<double>(order.size());
    rec.val_loss = mean_loss(config, params, val_set, store, tc.batch_size);
    if (!std::isfinite(rec.val_loss)) {
      throw NonFiniteLoss("non-finite validation loss at epoch " + std::to_string(epoch));
    }
    rec.val_f1 = evaluate(config, params, val_set, tc.classify_threshold, store).f1();
    rec.lr = opt.lr;
    nn::ScheduleDecision d = nn::schedule_epoch(rec.val_loss, sched);
    rec.improved = d.improved;
    if (rec.val_loss < result.best_val_loss) {
      result.best_val_loss = rec.val_loss;
      result.best_epoch = epoch;
      result.params = params;
    }
    opt.lr = d.lr;
    result.log.push_back(rec);
    spdlog::debug("epoch {} train_loss {:.6f} val_loss {:.6f} val_f1 {:.4f} lr {:.3g}", epoch,
                  rec.train_loss, rec.val_loss, rec.val_f1, rec.lr);
    if (on_epoch) on_epoch(rec);
    if (d.stop) {
      result.early_stopped = true;
      break;
    }
  }
  return result;
}

}  // namespace scopeit::model
