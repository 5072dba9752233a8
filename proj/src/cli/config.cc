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

#include "scopeit/cli/config.h"

#include <cmath>
#include <filesystem>
#include <set>

#include "scopeit/common/error.h"
#include "scopeit/common/io.h"

namespace scopeit::cli {
namespace {

void require_file(const std::string& path, const char* what) {
  if (!path.empty() && !std::filesystem::is_regular_file(path)) {
    throw ConfigError(std::string(what) + " '" + path + "' does not exist");
  }
}

}  // namespace

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  static const std::set<std::string> kKeys = {
      "corpus", "train_corpus", "validation_corpus", "test_corpus", "fractions", "vocab",
      "vocab_mode", "vocab_size", "embedding_store", "variant", "model", "train",
      "thresholds", "seed"};
  if (!j.is_object()) throw ConfigError("run config must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!kKeys.count(k)) throw ConfigError("unknown run config key '" + k + "'");
  }
  RunConfig c;
  try {
    auto read = [&j](const char* key, auto& field) {
      if (j.contains(key)) j.at(key).get_to(field);
    };
    read("corpus", c.corpus);
    read("train_corpus", c.train_corpus);
    read("validation_corpus", c.validation_corpus);
    read("test_corpus", c.test_corpus);
    if (j.contains("fractions")) {
      auto f = j["fractions"].get<std::vector<double>>();
      if (f.size() != 3) throw ConfigError("fractions must list train, validation and test");
      c.fractions = {f[0], f[1], f[2]};
    }
    read("vocab", c.vocab);
    if (j.contains("vocab_mode")) {
      c.vocab_mode = textprep::vocab_mode_from_string(j["vocab_mode"].get<std::string>());
    } else if (j.value("variant", std::string()) == "seq2seq") {
      c.vocab_mode = textprep::VocabMode::kWord;
    }
    read("vocab_size", c.vocab_size);
    read("embedding_store", c.embedding_store);
    read("variant", c.variant);
    if (j.contains("model")) {
      c.model = j["model"];
      model::ModelConfig probe;
      model::from_json(c.model, probe);
    }
    if (j.contains("train")) model::from_json(j["train"], c.train);
    if (j.contains("thresholds")) {
      const auto& t = j["thresholds"];
      for (const auto& [k, v] : t.items()) {
        if (k != "classify" && k != "scope") throw ConfigError("unknown threshold '" + k + "'");
      }
      c.classify_threshold = t.value("classify", c.classify_threshold);
      c.scope_threshold = t.value("scope", c.scope_threshold);
    }
    read("seed", c.seed);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad run config: ") + e.what());
  } catch (const VocabularyError& e) {
    throw ConfigError(e.what());
  }
  model::variant_config(c.variant);
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  try {
    return from_json(nlohmann::json::parse(read_file(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json train_json;
  model::to_json(train_json, train);
  return {{"corpus", corpus},
          {"train_corpus", train_corpus},
          {"validation_corpus", validation_corpus},
          {"test_corpus", test_corpus},
          {"fractions", {fractions.train, fractions.validation, fractions.test}},
          {"vocab", vocab},
          {"vocab_mode", textprep::to_string(vocab_mode)},
          {"vocab_size", vocab_size},
          {"embedding_store", embedding_store},
          {"variant", variant},
          {"model", model},
          {"train", train_json},
          {"thresholds", {{"classify", classify_threshold}, {"scope", scope_threshold}}},
          {"seed", seed}};
}

model::ModelConfig RunConfig::model_config() const {
  model::ModelConfig c = model::variant_config(variant);
  if (!embedding_store.empty()) c.embedding = model::EmbeddingKind::kPrecomputed;
  model::from_json(model, c);
  c.seed = seed;
  return c;
}

model::TrainConfig RunConfig::train_config() const {
  model::TrainConfig t = train;
  t.seed = seed;
  t.classify_threshold = classify_threshold;
  return t;
}

void RunConfig::validate() const {
  if (corpus.empty() && train_corpus.empty()) {
    throw ConfigError("a training run needs corpus or train_corpus");
  }
  if (!corpus.empty() && !train_corpus.empty()) {
    throw ConfigError("give either corpus or train_corpus, not both");
  }
  if (!train_corpus.empty() && validation_corpus.empty()) {
    throw ConfigError("train_corpus needs a validation_corpus");
  }
  require_file(corpus, "corpus");
  require_file(train_corpus, "train corpus");
  require_file(validation_corpus, "validation corpus");
  require_file(test_corpus, "test corpus");
  require_file(vocab, "vocabulary");
  require_file(embedding_store, "embedding store");
  if (!embedding_store.empty() && vocab.empty()) {
    throw ConfigError("an embedding store needs the vocabulary it was exported for");
  }
  if (std::abs(fractions.train + fractions.validation + fractions.test - 1.0) > 1e-9) {
    throw ConfigError("fractions must sum to 1");
  }
  if (!(scope_threshold >= 0 && scope_threshold < 1 && classify_threshold >= 0 &&
        classify_threshold < 1)) {
    throw ConfigError("thresholds must lie in [0, 1)");
  }
  model::ModelConfig m = model_config();
  if (m.embedding == model::EmbeddingKind::kTrainable) m.vocab_size = std::max<size_t>(m.vocab_size, 4);
  m.validate();
}

}  // namespace scopeit::cli
