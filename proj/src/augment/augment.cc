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

#include "scopeit/augment/augment.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <regex>

#include "scopeit/common/error.h"
#include "scopeit/common/io.h"
#include "scopeit/textprep/sentences.h"

namespace scopeit::augment {
namespace {

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

const std::regex& slot_regex() {
  static const std::regex kSlot(R"(\{([A-Z_]+)\})");
  return kSlot;
}

}  // namespace

DisqualificationList DisqualificationList::defaults() {
  return {{"book a room", "let's meet", "meeting", "conference room", "meet", "invitation",
           "location", "half an hour", "30 mins", "30 minutes", "45 mins", "schedule",
           "reserve"}};
}

std::optional<std::string> DisqualificationList::first_match(std::string_view body) const {
  std::string lower = ascii_lower(body);
  for (const std::string& p : phrases) {
    if (lower.find(ascii_lower(p)) != std::string::npos) return p;
  }
  return std::nullopt;
}

std::string document_body(const corpus::LabeledDocument& doc) {
  std::string out;
  for (size_t i = 0; i < doc.size(); ++i) {
    if (i) out += '\n';
    out += doc.doc.original_sentence(i);
  }
  return out;
}

std::vector<corpus::LabeledDocument> filter_negatives(
    const std::vector<corpus::LabeledDocument>& candidates, const DisqualificationList& dq,
    corpus::SourceTag source) {
  std::vector<corpus::LabeledDocument> out;
  for (const corpus::LabeledDocument& c : candidates) {
    if (dq.disqualifies(document_body(c))) continue;
    corpus::LabeledDocument d = c;
    std::fill(d.labels.begin(), d.labels.end(), 0);
    d.source = source;
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<std::pair<size_t, size_t>> passage_ranges(const textprep::Document& doc) {
  std::vector<std::pair<size_t, size_t>> out;
  for (size_t i = 0; i < doc.size(); ++i) {
    if (i == 0 || doc.passages[i] != doc.passages[i - 1]) {
      out.emplace_back(i, i + 1);
    } else {
      out.back().second = i + 1;
    }
  }
  return out;
}

corpus::LabeledDocument shuffle_passages(const corpus::LabeledDocument& doc, uint64_t seed) {
  auto ranges = passage_ranges(doc.doc);
  if (ranges.size() <= 3) return doc;
  std::vector<size_t> order(ranges.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  auto interior_begin = order.begin() + 1;
  auto interior_end = order.end() - 1;
  std::shuffle(interior_begin, interior_end, rng);
  if (std::is_sorted(order.begin(), order.end())) std::shuffle(interior_begin, interior_end, rng);
  if (std::is_sorted(order.begin(), order.end())) return doc;

  std::vector<std::string> sentences;
  std::vector<int> labels;
  std::vector<int> passages;
  std::vector<std::string> original = doc.doc.original_sentences();
  for (size_t p = 0; p < order.size(); ++p) {
    auto [b, e] = ranges[order[p]];
    for (size_t i = b; i < e; ++i) {
      sentences.push_back(original[i]);
      labels.push_back(doc.labels[i]);
      passages.push_back(static_cast<int>(p));
    }
  }
  corpus::LabeledDocument out = corpus::make_document(
      doc.id(), sentences, std::move(labels), corpus::SourceTag::kAugmentedShuffle,
      std::move(passages));
  out.entities = doc.entities;
  return out;
}

EmailTemplate EmailTemplate::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("text") || !j.contains("labels")) {
    throw SpecError("template needs \"text\" and \"labels\"");
  }
  EmailTemplate t;
  try {
    t.name = j.value("name", std::string());
    if (j["text"].is_string()) {
      textprep::SentenceSplitDocument split = textprep::split_sentences(j["text"].get<std::string>());
      t.sentences = split.sentences;
      t.passages = split.passages;
    } else {
      t.sentences = j["text"].get<std::vector<std::string>>();
      if (j.contains("passages")) {
        t.passages = j["passages"].get<std::vector<int>>();
      } else {
        t.passages.assign(t.sentences.size(), 0);
      }
    }
    t.labels = j["labels"].get<std::vector<int>>();
    if (j.contains("slots")) {
      t.slots = j["slots"].get<std::map<std::string, std::vector<std::string>>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("bad template field: ") + e.what());
  }
  if (t.labels.size() != t.sentences.size() || t.passages.size() != t.sentences.size()) {
    throw LabelMisalignment("template '" + t.name + "' has " + std::to_string(t.sentences.size()) +
                            " sentences and " + std::to_string(t.labels.size()) + " labels");
  }
  return t;
}

nlohmann::json EmailTemplate::to_json() const {
  nlohmann::json j = {{"text", sentences}, {"labels", labels}, {"passages", passages},
                      {"slots", slots}};
  if (!name.empty()) j["name"] = name;
  return j;
}

std::vector<std::string> EmailTemplate::used_slots() const {
  std::vector<std::string> out;
  for (const std::string& s : sentences) {
    for (std::sregex_iterator it(s.begin(), s.end(), slot_regex()), end; it != end; ++it) {
      std::string name = (*it)[1].str();
      if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    }
  }
  return out;
}

std::vector<EmailTemplate> load_templates(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(path + ": " + e.what());
  }
  std::vector<EmailTemplate> out;
  if (j.is_array()) {
    for (const auto& t : j) out.push_back(EmailTemplate::from_json(t));
  } else {
    out.push_back(EmailTemplate::from_json(j));
  }
  return out;
}

std::vector<corpus::LabeledDocument> instantiate_template(const EmailTemplate& t, uint64_t seed,
                                                          size_t n, const std::string& id_prefix) {
  std::vector<std::string> used = t.used_slots();
  for (const std::string& s : used) {
    auto it = t.slots.find(s);
    if (it == t.slots.end() || it->second.empty()) {
      throw EmptyCandidateList("slot {" + s + "} has no candidates");
    }
  }
  std::mt19937_64 rng(seed);
  std::vector<corpus::LabeledDocument> out;
  out.reserve(n);
  for (size_t k = 0; k < n; ++k) {
    std::map<std::string, std::string> fill;
    for (const std::string& s : used) {
      const auto& cands = t.slots.at(s);
      fill[s] = cands[std::uniform_int_distribution<size_t>(0, cands.size() - 1)(rng)];
    }
    std::vector<std::string> sentences;
    for (const std::string& s : t.sentences) {
      std::string filled;
      auto last = s.cbegin();
      for (std::sregex_iterator it(s.begin(), s.end(), slot_regex()), end; it != end; ++it) {
        filled.append(last, s.cbegin() + it->position());
        filled += fill[(*it)[1].str()];
        last = s.cbegin() + it->position() + it->length();
      }
      filled.append(last, s.cend());
      sentences.push_back(std::move(filled));
    }
    out.push_back(corpus::make_document(id_prefix + "-" + std::to_string(k), sentences, t.labels,
                                        corpus::SourceTag::kAugmentedTemplate, t.passages));
  }
  return out;
}

}  // namespace scopeit::augment
