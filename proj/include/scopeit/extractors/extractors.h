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

#ifndef SCOPEIT_EXTRACTORS_EXTRACTORS_H_
#define SCOPEIT_EXTRACTORS_EXTRACTORS_H_

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "scopeit/corpus/corpus.h"
#include "scopeit/scoper/scoper.h"

namespace scopeit::extractors {

enum class EntityKind { kPhone, kDuration, kTimezone };
inline constexpr std::array<EntityKind, 3> kAllKinds = {EntityKind::kPhone, EntityKind::kDuration,
                                                        EntityKind::kTimezone};

std::string_view to_string(EntityKind kind);
EntityKind entity_kind_from_string(std::string_view s);

struct EntitySpan {
  EntityKind kind;
  std::string surface;
  // Byte span in the analyzed text.
  size_t begin = 0;
  size_t end = 0;
  // Phone: digits including any country code. Duration: minutes. Timezone:
  // the abbreviation.
  std::string value;
};

// Optional +country code, then ten digits as 3-3-4 with single space, dash or
// dot separators and an optional parenthesized area code. Digit runs that
// continue on either side are not matched.
std::vector<EntitySpan> extract_phone(std::string_view text);
// <int> minute/hour units, and "half an hour" as 30.
std::vector<EntitySpan> extract_duration(std::string_view text);
std::vector<EntitySpan> extract_timezone(std::string_view text);
std::vector<EntitySpan> extract(EntityKind kind, std::string_view text);

inline constexpr std::array<std::string_view, 16> kTimezones = {
    "EST", "EDT", "CST", "CDT", "MST", "MDT", "PST", "PDT",
    "UTC", "GMT", "IST", "CET", "CEST", "BST", "JST", "AEST"};

// Entity-level counts with gold matched by normalized value as multisets.
struct MatchCounts {
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;
  // Documents with gold of this kind, and those whose extracted multiset
  // equals the gold multiset exactly.
  size_t gold_documents = 0;
  size_t exact_documents = 0;

  double precision() const;
  double recall() const;
  double accuracy() const;
};

struct KindReport {
  EntityKind kind;
  MatchCounts before;
  MatchCounts after;
};

struct ExtractionReport {
  std::vector<KindReport> kinds;
  double threshold = scoper::kScopeThreshold;
  size_t documents = 0;
  size_t actionable_documents = 0;

  const KindReport& at(EntityKind kind) const;
  // Rows {task, metric, before, after, delta}.
  nlohmann::json to_json() const;
};

// Adds one document's extraction result to `counts`.
void match_entities(const std::vector<std::string>& extracted, const std::vector<std::string>& gold,
                    MatchCounts& counts);

using Scorer = std::function<std::vector<double>(const corpus::LabeledDocument&)>;

// Full text is the sentences joined by '\n'; scoped text is the scoped
// message. Throws EmptyCorpus.
ExtractionReport compare_before_after(const std::vector<corpus::LabeledDocument>& docs,
                                      const Scorer& scorer,
                                      double threshold = scoper::kScopeThreshold);

}  // namespace scopeit::extractors

#endif  // SCOPEIT_EXTRACTORS_EXTRACTORS_H_
