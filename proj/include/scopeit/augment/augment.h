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

#ifndef SCOPEIT_AUGMENT_AUGMENT_H_
#define SCOPEIT_AUGMENT_AUGMENT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "scopeit/corpus/corpus.h"

namespace scopeit::augment {

// Phrases that mark a candidate negative as possibly meeting related.
// Matching is a case-insensitive substring test over the whole body.
struct DisqualificationList {
  std::vector<std::string> phrases;

  static DisqualificationList defaults();
  // First phrase found in `body`, in list order.
  std::optional<std::string> first_match(std::string_view body) const;
  bool disqualifies(std::string_view body) const { return first_match(body).has_value(); }
};

// Sentences joined by '\n' with placeholders restored.
std::string document_body(const corpus::LabeledDocument& doc);

// Keeps the candidates no phrase disqualifies, relabeled all zero and tagged
// with `source`.
std::vector<corpus::LabeledDocument> filter_negatives(
    const std::vector<corpus::LabeledDocument>& candidates, const DisqualificationList& dq,
    corpus::SourceTag source = corpus::SourceTag::kNegativeEnron);

// Sentence index ranges [begin, end) of each run of equal passage ids.
std::vector<std::pair<size_t, size_t>> passage_ranges(const textprep::Document& doc);

// Documents with more than three passages get their interior passages
// permuted; the first and last stay put. An identity draw is resampled once.
// A changed document is tagged augmented-shuffle and keeps its id.
corpus::LabeledDocument shuffle_passages(const corpus::LabeledDocument& doc, uint64_t seed);

// Template text holds {SLOT} markers. Every slot used in the text needs a
// non-empty candidate list. One candidate is drawn per slot per instance, so
// repeated markers agree.
struct EmailTemplate {
  std::string name;
  std::vector<std::string> sentences;
  std::vector<int> labels;
  std::vector<int> passages;
  std::map<std::string, std::vector<std::string>> slots;

  // "text" is either one string, segmented with split_sentences, or an array
  // of sentences.
  static EmailTemplate from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  // Slot names in order of first use.
  std::vector<std::string> used_slots() const;
};

std::vector<EmailTemplate> load_templates(const std::string& path);

std::vector<corpus::LabeledDocument> instantiate_template(const EmailTemplate& t, uint64_t seed,
                                                          size_t n,
                                                          const std::string& id_prefix = "tmpl");

}  // namespace scopeit::augment

#endif  // SCOPEIT_AUGMENT_AUGMENT_H_
