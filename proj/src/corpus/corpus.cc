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

#include "scopeit/corpus/corpus.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "scopeit/common/error.h"
#include "scopeit/common/io.h"

namespace scopeit::corpus {
namespace {

constexpr std::array<std::pair<SourceTag, std::string_view>, 6> kTags = {{
    {SourceTag::kInternal, "internal-style"},
    {SourceTag::kNegativeEnron, "negative-enron-style"},
    {SourceTag::kNegativeReview, "negative-review-style"},
    {SourceTag::kAugmentedShuffle, "augmented-shuffle"},
    {SourceTag::kAugmentedTemplate, "augmented-template"},
    {SourceTag::kSignature, "signature-corpus"},
}};

}  // namespace

std::string_view to_string(SourceTag tag) {
  for (const auto& [t, name] : kTags) {
    if (t == tag) return name;
  }
  return "internal-style";
}

SourceTag source_from_string(std::string_view s) {
  for (const auto& [t, name] : kTags) {
    if (name == s) return t;
  }
  throw SchemaError("unknown source tag '" + std::string(s) + "'");
}

LabeledDocument make_document(std::string id, const std::vector<std::string>& sentences,
                              std::vector<int> labels, SourceTag source,
                              std::vector<int> passages) {
  if (labels.size() != sentences.size()) {
    throw LabelMisalignment("document '" + id + "' has " + std::to_string(sentences.size()) +
                            " sentences and " + std::to_string(labels.size()) + " labels");
  }
  for (int y : labels) {
    if (y != 0 && y != 1) throw SchemaError("document '" + id + "' has a label outside {0, 1}");
  }
  if (!passages.empty() && passages.size() != sentences.size()) {
    throw LabelMisalignment("document '" + id + "' has " + std::to_string(passages.size()) +
                            " passage ids for " + std::to_string(sentences.size()) + " sentences");
  }
  LabeledDocument d;
  d.doc = textprep::preprocess_sentences(std::move(id), sentences, passages);
  d.labels = std::move(labels);
  d.source = source;
  return d;
}

nlohmann::json to_json(const LabeledDocument& d) {
  nlohmann::json j = {{"id", d.doc.id},
                      {"sentences", d.doc.original_sentences()},
                      {"labels", d.labels},
                      {"source", to_string(d.source)}};
  bool single = std::all_of(d.doc.passages.begin(), d.doc.passages.end(),
                            [](int p) { return p == 0; });
  if (!single) j["passages"] = d.doc.passages;
  if (!d.entities.empty()) {
    nlohmann::json ents = nlohmann::json::array();
    for (const GoldEntity& e : d.entities) ents.push_back({{"kind", e.kind}, {"value", e.value}});
    j["entities"] = ents;
  }
  return j;
}

LabeledDocument document_from_json(const nlohmann::json& j, bool require_labels) {
  static const std::set<std::string> kKeys = {"id", "sentences", "labels", "source", "passages",
                                              "entities"};
  if (!j.is_object()) throw SchemaError("record is not a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!kKeys.count(k)) throw SchemaError("unknown field '" + k + "'");
  }
  if (!j.contains("id") || !j["id"].is_string()) throw SchemaError("missing string field 'id'");
  if (!j.contains("sentences") || !j["sentences"].is_array()) {
    throw SchemaError("missing array field 'sentences'");
  }
  try {
    std::string id = j["id"].get<std::string>();
    auto sentences = j["sentences"].get<std::vector<std::string>>();
    std::vector<int> labels;
    if (j.contains("labels")) {
      labels = j["labels"].get<std::vector<int>>();
    } else if (require_labels) {
      throw SchemaError("missing array field 'labels'");
    } else {
      labels.assign(sentences.size(), 0);
    }
    SourceTag source =
        j.contains("source") ? source_from_string(j["source"].get<std::string>()) : SourceTag::kInternal;
    std::vector<int> passages;
    if (j.contains("passages")) passages = j["passages"].get<std::vector<int>>();
    LabeledDocument d = make_document(std::move(id), sentences, std::move(labels), source,
                                      std::move(passages));
    if (j.contains("entities")) {
      for (const auto& e : j["entities"]) {
        d.entities.push_back({e.at("kind").get<std::string>(), e.at("value").get<std::string>()});
      }
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("bad field type: ") + e.what());
  }
}

std::vector<LabeledDocument> parse_jsonl_corpus(std::string_view contents, bool require_labels) {
  std::vector<LabeledDocument> out;
  std::set<std::string> ids;
  size_t pos = 0;
  size_t line_no = 0;
  while (pos < contents.size()) {
    size_t nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    std::string_view line = contents.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    std::string where = "line " + std::to_string(line_no) + ": ";
    try {
      nlohmann::json j = nlohmann::json::parse(line);
      LabeledDocument d = document_from_json(j, require_labels);
      if (!ids.insert(d.doc.id).second) throw SchemaError("duplicate id '" + d.doc.id + "'");
      out.push_back(std::move(d));
    } catch (const nlohmann::json::parse_error& e) {
      throw SchemaError(where + "invalid JSON: " + e.what());
    } catch (const LabelMisalignment& e) {
      throw LabelMisalignment(where + e.what());
    } catch (const Error& e) {
      throw SchemaError(where + e.what());
    }
  }
  return out;
}

std::vector<LabeledDocument> load_jsonl_corpus(const std::string& path, bool require_labels) {
  return parse_jsonl_corpus(read_file(path), require_labels);
}

std::string to_jsonl(const std::vector<LabeledDocument>& docs) {
  std::string out;
  for (const LabeledDocument& d : docs) {
    out += to_json(d).dump();
    out += '\n';
  }
  return out;
}

void write_jsonl_corpus(const std::string& path, const std::vector<LabeledDocument>& docs) {
  write_file(path, to_jsonl(docs));
}

CorpusSplit split_corpus(std::vector<LabeledDocument> docs, const SplitFractions& f,
                         uint64_t seed) {
  if (docs.empty()) throw EmptyCorpus("cannot split an empty corpus");
  if (f.train < 0 || f.validation < 0 || f.test < 0 ||
      std::abs(f.train + f.validation + f.test - 1.0) > 1e-9) {
    throw ConfigError("split fractions must be non-negative and sum to 1");
  }
  std::mt19937_64 rng(seed);
  std::shuffle(docs.begin(), docs.end(), rng);
  const double n = static_cast<double>(docs.size());
  size_t n_test = static_cast<size_t>(std::llround(f.test * n));
  size_t n_val = std::min(static_cast<size_t>(std::llround(f.validation * n)), docs.size() - n_test);
  CorpusSplit s;
  auto it = docs.begin();
  s.test.assign(std::make_move_iterator(it), std::make_move_iterator(it + static_cast<long>(n_test)));
  it += static_cast<long>(n_test);
  s.validation.assign(std::make_move_iterator(it), std::make_move_iterator(it + static_cast<long>(n_val)));
  it += static_cast<long>(n_val);
  s.train.assign(std::make_move_iterator(it), std::make_move_iterator(docs.end()));
  return s;
}

Stats corpus_stats(const std::vector<LabeledDocument>& docs) {
  Stats s;
  s.n_docs = docs.size();
  for (const LabeledDocument& d : docs) {
    s.n_sent += d.size();
    for (int y : d.labels) (y ? s.n_pos : s.n_neg)++;
  }
  return s;
}

nlohmann::json to_json(const Stats& s) {
  return {{"n_docs", s.n_docs}, {"n_sent", s.n_sent}, {"n_pos", s.n_pos}, {"n_neg", s.n_neg}};
}

nlohmann::json split_stats(const CorpusSplit& split) {
  return {{"train", to_json(corpus_stats(split.train))},
          {"validation", to_json(corpus_stats(split.validation))},
          {"test", to_json(corpus_stats(split.test))}};
}

}  // namespace scopeit::corpus
