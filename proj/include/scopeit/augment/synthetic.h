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

#ifndef SCOPEIT_AUGMENT_SYNTHETIC_H_
#define SCOPEIT_AUGMENT_SYNTHETIC_H_

#include <cstdint>
#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "scopeit/corpus/corpus.h"

namespace scopeit::augment {

// Sentences drawn from a small closed set of frames, each optionally carrying
// the marker words. A sentence is relevant iff it holds `x_token` and the
// previous sentence holds `y_token`.
struct ContextFamilySpec {
  double x_rate = 0.35;
  double y_rate = 0.5;
  size_t min_sentences = 3;
  size_t max_sentences = 8;
  std::string x_token = "confirmed";
  std::string y_token = "tomorrow";
};

// Document counts per family. Scheduling emails carry gold phone, duration and
// timezone entities in their relevant sentences and distractors of the same
// kinds in signatures and filler. Shuffled variants are drawn from the
// training split only.
struct SyntheticSpec {
  size_t pos_templates = 0;
  size_t replies = 0;
  size_t negatives = 0;
  size_t review_negatives = 0;
  size_t shuffled = 0;
  size_t separable = 0;
  size_t context_dependent = 0;
  double signature_rate = 0.6;
  double distractor_rate = 0.5;
  ContextFamilySpec context;
  corpus::SplitFractions fractions;

  // Unknown keys and out-of-range values raise SpecError.
  static SyntheticSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  size_t base_documents() const;
};

// Counts tallied while generating, independent of the corpus module.
struct Bookkeeping {
  corpus::Stats train;
  corpus::Stats validation;
  corpus::Stats test;
  std::map<std::string, size_t> documents_by_family;
  size_t negative_candidates = 0;
  size_t negatives_rejected = 0;

  nlohmann::json to_json() const;
};

struct SyntheticCorpus {
  corpus::CorpusSplit split;
  Bookkeeping bookkeeping;
};

SyntheticCorpus build_synthetic_corpus(const SyntheticSpec& spec, uint64_t seed);

}  // namespace scopeit::augment

#endif  // SCOPEIT_AUGMENT_SYNTHETIC_H_
