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

#include "scopeit/extractors/extractors.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <regex>

#include "scopeit/common/error.h"

namespace scopeit::extractors {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

template <typename OnMatch>
void for_each_match(std::string_view text, const std::regex& re, OnMatch on_match) {
  using It = std::regex_iterator<std::string_view::const_iterator>;
  for (It it(text.begin(), text.end(), re), end; it != end; ++it) {
    on_match(*it, static_cast<size_t>(it->position()), static_cast<size_t>(it->length()));
  }
}

double ratio(size_t num, size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::string_view to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::kPhone: return "phone";
    case EntityKind::kDuration: return "duration";
    case EntityKind::kTimezone: return "timezone";
  }
  return "phone";
}

EntityKind entity_kind_from_string(std::string_view s) {
  for (EntityKind k : kAllKinds) {
    if (to_string(k) == s) return k;
  }
  throw SchemaError("unknown entity kind '" + std::string(s) + "'");
}

std::vector<EntitySpan> extract_phone(std::string_view text) {
  static const std::regex kPhone(R"((\+\d{1,3}[ .-]?)?(\(\d{3}\)|\d{3})[ .-]?\d{3}[ .-]?\d{4})");
  std::vector<EntitySpan> out;
  for_each_match(text, kPhone, [&](const auto&, size_t pos, size_t len) {
    if (pos > 0 && (is_digit(text[pos - 1]) || text[pos - 1] == '+')) return;
    if (pos + len < text.size() && is_digit(text[pos + len])) return;
    EntitySpan s{EntityKind::kPhone, std::string(text.substr(pos, len)), pos, pos + len, ""};
    for (char c : s.surface) {
      if (is_digit(c)) s.value += c;
    }
    out.push_back(std::move(s));
  });
  return out;
}

std::vector<EntitySpan> extract_duration(std::string_view text) {
  static const std::regex kUnits(R"(\b(\d+) ?(minutes|minute|mins|min|hours|hour|hrs|hr)\b)",
                                 std::regex::icase);
  static const std::regex kHalf(R"(\bhalf an hour\b)", std::regex::icase);
  std::vector<EntitySpan> out;
  for_each_match(text, kUnits, [&](const auto& m, size_t pos, size_t len) {
    long long n = std::stoll(m[1].str());
    std::string unit = m[2].str();
    std::transform(unit.begin(), unit.end(), unit.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    long long minutes = unit[0] == 'h' ? n * 60 : n;
    out.push_back({EntityKind::kDuration, std::string(text.substr(pos, len)), pos, pos + len,
                   std::to_string(minutes)});
  });
  for_each_match(text, kHalf, [&](const auto&, size_t pos, size_t len) {
    out.push_back({EntityKind::kDuration, std::string(text.substr(pos, len)), pos, pos + len, "30"});
  });
  std::sort(out.begin(), out.end(),
            [](const EntitySpan& a, const EntitySpan& b) { return a.begin < b.begin; });
  return out;
}

std::vector<EntitySpan> extract_timezone(std::string_view text) {
  static const std::regex kZone = [] {
    std::string alt;
    for (std::string_view z : kTimezones) {
      if (!alt.empty()) alt += '|';
      alt += z;
    }
    return std::regex("\\b(" + alt + ")\\b");
  }();
  std::vector<EntitySpan> out;
  for_each_match(text, kZone, [&](const auto& m, size_t pos, size_t len) {
    out.push_back({EntityKind::kTimezone, m[1].str(), pos, pos + len, m[1].str()});
  });
  return out;
}

std::vector<EntitySpan> extract(EntityKind kind, std::string_view text) {
  switch (kind) {
    case EntityKind::kPhone: return extract_phone(text);
    case EntityKind::kDuration: return extract_duration(text);
    case EntityKind::kTimezone: return extract_timezone(text);
  }
  return {};
}

double MatchCounts::precision() const { return ratio(tp, tp + fp); }
double MatchCounts::recall() const { return ratio(tp, tp + fn); }
double MatchCounts::accuracy() const { return ratio(exact_documents, gold_documents); }

const KindReport& ExtractionReport::at(EntityKind kind) const {
  for (const KindReport& k : kinds) {
    if (k.kind == kind) return k;
  }
  throw SchemaError("report has no entry for " + std::string(to_string(kind)));
}

nlohmann::json ExtractionReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  auto row = [&](EntityKind kind, const char* metric, double before, double after) {
    rows.push_back({{"task", to_string(kind)},
                    {"metric", metric},
                    {"before", before},
                    {"after", after},
                    {"delta", after - before}});
  };
  for (const KindReport& k : kinds) {
    row(k.kind, "precision", k.before.precision(), k.after.precision());
    row(k.kind, "recall", k.before.recall(), k.after.recall());
    if (k.kind == EntityKind::kDuration) {
      row(k.kind, "accuracy", k.before.accuracy(), k.after.accuracy());
    }
  }
  return {{"threshold", threshold},
          {"documents", documents},
          {"actionable_documents", actionable_documents},
          {"rows", rows}};
}

void match_entities(const std::vector<std::string>& extracted, const std::vector<std::string>& gold,
                    MatchCounts& counts) {
  std::map<std::string, long> remaining;
  for (const std::string& g : gold) ++remaining[g];
  size_t tp = 0;
  for (const std::string& e : extracted) {
    auto it = remaining.find(e);
    if (it != remaining.end() && it->second > 0) {
      --it->second;
      ++tp;
    }
  }
  counts.tp += tp;
  counts.fp += extracted.size() - tp;
  counts.fn += gold.size() - tp;
  if (!gold.empty()) {
    ++counts.gold_documents;
    if (tp == gold.size() && extracted.size() == gold.size()) ++counts.exact_documents;
  }
}

ExtractionReport compare_before_after(const std::vector<corpus::LabeledDocument>& docs,
                                      const Scorer& scorer, double threshold) {
  if (docs.empty()) throw EmptyCorpus("extraction study needs at least one document");
  ExtractionReport report;
  report.threshold = threshold;
  report.documents = docs.size();
  for (EntityKind k : kAllKinds) report.kinds.push_back({k, {}, {}});
  for (const corpus::LabeledDocument& d : docs) {
    std::string full;
    for (size_t i = 0; i < d.size(); ++i) {
      if (i) full += '\n';
      full += d.doc.original_sentence(i);
    }
    std::vector<double> scores = scorer(d);
    scoper::ScopedMessage scoped = scoper::scope(d.doc, scores, threshold);
    report.actionable_documents += scoped.actionable;
    for (KindReport& k : report.kinds) {
      std::vector<std::string> gold;
      for (const corpus::GoldEntity& e : d.entities) {
        if (e.kind == to_string(k.kind)) gold.push_back(e.value);
      }
      auto values = [&](std::string_view text) {
        std::vector<std::string> v;
        for (const EntitySpan& s : extract(k.kind, text)) v.push_back(s.value);
        return v;
      };
      match_entities(values(full), gold, k.before);
      match_entities(values(scoped.text), gold, k.after);
    }
  }
  return report;
}

}  // namespace scopeit::extractors
