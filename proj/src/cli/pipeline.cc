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

#include "scopeit/cli/pipeline.h"

#include "scopeit/common/error.h"

namespace scopeit::cli {

textprep::Vocabulary corpus_vocabulary(const std::vector<corpus::LabeledDocument>& docs,
                                       textprep::VocabMode mode, size_t size) {
  std::vector<std::string> sentences;
  for (const corpus::LabeledDocument& d : docs) {
    sentences.insert(sentences.end(), d.doc.sentences.begin(), d.doc.sentences.end());
  }
  if (mode == textprep::VocabMode::kWord) {
    return textprep::Vocabulary::build_word_level(sentences, size);
  }
  return textprep::Vocabulary::build_wordpiece(sentences, size);
}

std::vector<model::Example> to_examples(const std::vector<corpus::LabeledDocument>& docs,
                                        const model::ScopeItModel& m) {
  std::vector<model::Example> out;
  out.reserve(docs.size());
  for (const corpus::LabeledDocument& d : docs) out.push_back({m.tokenize(d.doc), d.labels});
  return out;
}

corpus::CorpusSplit load_split(const RunConfig& rc) {
  if (!rc.corpus.empty()) {
    return corpus::split_corpus(corpus::load_jsonl_corpus(rc.corpus), rc.fractions, rc.seed);
  }
  corpus::CorpusSplit s;
  s.train = corpus::load_jsonl_corpus(rc.train_corpus);
  s.validation = corpus::load_jsonl_corpus(rc.validation_corpus);
  if (!rc.test_corpus.empty()) s.test = corpus::load_jsonl_corpus(rc.test_corpus);
  return s;
}

std::unique_ptr<model::EmbeddingStore> load_store(const std::string& path) {
  if (path.empty()) return nullptr;
  return std::make_unique<model::EmbeddingStore>(model::EmbeddingStore::load(path));
}

FitResult fit(const RunConfig& rc, const std::vector<corpus::LabeledDocument>& train,
              const std::vector<corpus::LabeledDocument>& validation,
              const model::EmbeddingStore* store, const model::EpochCallback& on_epoch,
              std::optional<textprep::Vocabulary> vocab) {
  if (train.empty()) throw EmptyCorpus("training split is empty");
  if (validation.empty()) throw EmptyCorpus("validation split is empty");
  if (!vocab) {
    vocab = rc.vocab.empty() ? corpus_vocabulary(train, rc.vocab_mode, rc.vocab_size)
                             : textprep::Vocabulary::load(rc.vocab, rc.vocab_mode);
  }
  model::ModelConfig mc = rc.model_config();
  if (store && !rc.model.contains("embedding_dim")) mc.embedding_dim = store->dim();
  model::ScopeItModel initial = model::ScopeItModel::create(mc, *vocab);
  initial.check_store(store);
  std::vector<model::Example> tr = to_examples(train, initial);
  std::vector<model::Example> va = to_examples(validation, initial);
  model::TrainResult result =
      model::train(initial.config(), tr, va, rc.train_config(), store, on_epoch);
  model::ScopeItModel trained(initial.config(), *vocab, result.params);
  return {std::move(trained), std::move(result)};
}

std::vector<double> document_scores(const model::ScopeItModel& m,
                                    const corpus::LabeledDocument& doc,
                                    const model::EmbeddingStore* store) {
  return m.score(m.tokenize(doc.doc), store).scores;
}

model::Metrics evaluate_corpus(const model::ScopeItModel& m,
                               const std::vector<corpus::LabeledDocument>& docs, double threshold,
                               const model::EmbeddingStore* store) {
  if (docs.empty()) throw EmptyCorpus("evaluation corpus is empty");
  model::Metrics metrics;
  for (const corpus::LabeledDocument& d : docs) {
    metrics.add(document_scores(m, d, store), d.labels, threshold);
  }
  return metrics;
}

extractors::Scorer scorer_for(const model::ScopeItModel& m, const model::EmbeddingStore* store) {
  return [&m, store](const corpus::LabeledDocument& d) { return document_scores(m, d, store); };
}

}  // namespace scopeit::cli
