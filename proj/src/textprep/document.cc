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

#include "scopeit/textprep/document.h"

#include "scopeit/common/error.h"
#include "scopeit/textprep/mojibake.h"
#include "scopeit/textprep/sentences.h"

namespace scopeit::textprep {

std::string Document::original_sentence(size_t i) const {
  return invert_sentence(sentences.at(i), static_cast<int>(i), replacements);
}

std::vector<std::string> Document::original_sentences() const {
  std::vector<std::string> out;
  out.reserve(sentences.size());
  for (size_t i = 0; i < sentences.size(); ++i) out.push_back(original_sentence(i));
  return out;
}

Document preprocess_text(std::string id, std::string_view raw) {
  CleanedText cleaned = replace_urls_emails(repair_mojibake(raw));
  SentenceSplitDocument split = split_sentences(cleaned.text);
  assign_sentences(cleaned.map, split.offsets);
  Document doc;
  doc.id = std::move(id);
  doc.sentences = std::move(split.sentences);
  doc.passages = std::move(split.passages);
  doc.replacements = std::move(cleaned.map);
  return doc;
}

Document preprocess_sentences(std::string id, std::span<const std::string> sentences,
                              std::span<const int> passages) {
  if (!passages.empty() && passages.size() != sentences.size()) {
    throw LengthMismatch("passage ids (" + std::to_string(passages.size()) +
                         ") do not match sentences (" + std::to_string(sentences.size()) + ")");
  }
  Document doc;
  doc.id = std::move(id);
  size_t offset = 0;
  for (size_t i = 0; i < sentences.size(); ++i) {
    CleanedText c = replace_urls_emails(repair_mojibake(sentences[i]));
    int occurrence = 0;
    for (Replacement& r : c.map.entries) {
      r.begin += offset;
      r.end += offset;
      r.sentence = static_cast<int>(i);
      r.occurrence = occurrence++;
      doc.replacements.entries.push_back(std::move(r));
    }
    offset += c.text.size() + 1;
    doc.sentences.push_back(std::move(c.text));
    doc.passages.push_back(passages.empty() ? 0 : passages[i]);
  }
  return doc;
}

std::vector<size_t> TokenizedDocument::lengths() const {
  std::vector<size_t> out;
  out.reserve(sentence_tokens.size());
  for (const auto& s : sentence_tokens) out.push_back(s.size());
  return out;
}

TokenizedDocument tokenize_document(const Document& doc, const Vocabulary& vocab,
                                    size_t max_tokens) {
  TokenizedDocument out;
  out.doc_id = doc.id;
  out.vocab_id = vocab.id();
  for (const std::string& s : doc.sentences) {
    std::vector<int> ids = tokenize(s, vocab);
    if (ids.empty()) ids.push_back(Vocabulary::kUnk);
    bool cut = ids.size() > max_tokens;
    if (cut) ids.resize(max_tokens);
    out.sentence_tokens.push_back(std::move(ids));
    out.truncated.push_back(cut);
  }
  return out;
}

}  // namespace scopeit::textprep
