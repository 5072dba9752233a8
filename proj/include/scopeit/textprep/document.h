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

#ifndef SCOPEIT_TEXTPREP_DOCUMENT_H_
#define SCOPEIT_TEXTPREP_DOCUMENT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scopeit/textprep/replace.h"
#include "scopeit/textprep/tokenizer.h"
#include "scopeit/textprep/vocabulary.h"

namespace scopeit::textprep {

// A preprocessed, sentence-segmented document. Sentences hold cleaned text
// (placeholders in place of URLs and emails); `replacements` restores them.
struct Document {
  std::string id;
  std::vector<std::string> sentences;
  std::vector<int> passages;
  ReplacementMap replacements;

  size_t size() const { return sentences.size(); }
  // Sentence `i` with its placeholders restored.
  std::string original_sentence(size_t i) const;
  std::vector<std::string> original_sentences() const;
};

// repair_mojibake -> replace_urls_emails -> split_sentences. Substitution runs
// before splitting because URLs carry periods.
Document preprocess_text(std::string id, std::string_view raw);

// For pre-segmented input: each sentence is repaired and substituted on its
// own, so sentence boundaries (and labels aligned to them) never move. The
// cleaned text behind the map offsets is the sentences joined by '\n'.
// `passages` may be empty (single passage) or hold one id per sentence.
Document preprocess_sentences(std::string id, std::span<const std::string> sentences,
                              std::span<const int> passages = {});

struct TokenizedDocument {
  std::string doc_id;
  std::vector<std::vector<int>> sentence_tokens;
  // Set when the sentence was cut at the max token count.
  std::vector<bool> truncated;
  std::string vocab_id;

  size_t size() const { return sentence_tokens.size(); }
  std::vector<size_t> lengths() const;
};

// Every sentence gets at least one token (UNK for an empty decomposition) and
// at most `max_tokens`.
TokenizedDocument tokenize_document(const Document& doc, const Vocabulary& vocab,
                                    size_t max_tokens = kDefaultMaxTokens);

}  // namespace scopeit::textprep

#endif  // SCOPEIT_TEXTPREP_DOCUMENT_H_
