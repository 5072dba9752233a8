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

#ifndef SCOPEIT_CORPUS_CORPUS_H_
#define SCOPEIT_CORPUS_CORPUS_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "scopeit/textprep/document.h"

namespace scopeit::corpus {

enum class SourceTag {
  kInternal,
  kNegativeEnron,
  kNegativeReview,
  kAugmentedShuffle,
  kAugmentedTemplate,
  kSignature,
};

std::string_view to_string(SourceTag tag);
// Throws SchemaError for an unknown tag.
SourceTag source_from_string(std::string_view s);

// Entity planted at generation time for the extractor study. `value` is
// the normalized form: digits for phone, minutes for duration, the
// abbreviation for timezone.
struct GoldEntity {
  std::string kind;
  std::string value;
  bool operator==(const GoldEntity&) const = default;
};

struct LabeledDocument {
  textprep::Document doc;
  std::vector<int> labels;
  SourceTag source = SourceTag::kInternal;
  std::vector<GoldEntity> entities;

  const std::string& id() const { return doc.id; }
  size_t size() const { return doc.size(); }
};

// Builds a document from raw sentences, running them through textprep.
// Throws LabelMisalignment when the counts differ.
LabeledDocument make_document(std::string id, const std::vector<std::string>& sentences,
                              std::vector<int> labels, SourceTag source = SourceTag::kInternal,
                              std::vector<int> passages = {});

// One JSON object per line:
//   {"id": s, "sentences": [s], "labels": [0|1], "source": s?,
//    "passages": [int]?, "entities": [{"kind": s, "value": s}]?}
// "passages" gives the passage index of each sentence; without it all
// sentences share passage 0. Sentences are stored with placeholders
// inverted, so a written corpus reads back identically.
nlohmann::json to_json(const LabeledDocument& d);
LabeledDocument document_from_json(const nlohmann::json& j, bool require_labels = true);

// Errors carry the 1-based line number. Blank lines are skipped.
std::vector<LabeledDocument> parse_jsonl_corpus(std::string_view contents,
                                                bool require_labels = true);
std::vector<LabeledDocument> load_jsonl_corpus(const std::string& path, bool require_labels = true);
std::string to_jsonl(const std::vector<LabeledDocument>& docs);
void write_jsonl_corpus(const std::string& path, const std::vector<LabeledDocument>& docs);

struct SplitFractions {
  double train = 0.81;
  double validation = 0.09;
  double test = 0.10;
};

struct CorpusSplit {
  std::vector<LabeledDocument> train;
  std::vector<LabeledDocument> validation;
  std::vector<LabeledDocument> test;
};

// Seeded shuffle, then test and validation sizes rounded from their
// fractions and the remainder to train.
CorpusSplit split_corpus(std::vector<LabeledDocument> docs, const SplitFractions& fractions,
                         uint64_t seed);

struct Stats {
  size_t n_docs = 0;
  size_t n_sent = 0;
  size_t n_pos = 0;
  size_t n_neg = 0;
  bool operator==(const Stats&) const = default;
};

Stats corpus_stats(const std::vector<LabeledDocument>& docs);
// {"train": {...}, "validation": {...}, "test": {...}}
nlohmann::json split_stats(const CorpusSplit& split);
nlohmann::json to_json(const Stats& s);

}  // namespace scopeit::corpus

#endif  // SCOPEIT_CORPUS_CORPUS_H_
