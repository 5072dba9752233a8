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

#ifndef SCOPEIT_TEXTPREP_SENTENCES_H_
#define SCOPEIT_TEXTPREP_SENTENCES_H_

#include <string>
#include <string_view>
#include <vector>

#include "scopeit/textprep/replace.h"

namespace scopeit::textprep {

// Lines shorter than this many code points (after trimming) end a sentence
// at their newline. Longer lines are treated as soft-wrapped prose unless they
// end in terminal punctuation.
inline constexpr size_t kShortLineLength = 40;

struct SentenceSplitDocument {
  std::vector<std::string> sentences;
  // Byte span of each sentence in the input; the bytes between consecutive
  // spans are whitespace only.
  std::vector<SentenceSpan> offsets;
  // Passage index per sentence. Passages are separated by blank lines.
  std::vector<int> passages;

  size_t size() const { return sentences.size(); }
};

// Rule-based, deterministic segmentation:
//  - a blank line always ends a sentence and starts a new passage;
//  - a short line, or a line ending in . ! or ?, ends a sentence at its
//    newline (salutations, sign-offs and signature lines stay separate);
//  - inside a line run, . ! or ? followed by whitespace and a capital letter
//    ends a sentence unless the word is an abbreviation (Mr. Mrs. Ms. Dr.
//    e.g. i.e. etc. vs.).
// Whitespace-only input yields no sentences.
SentenceSplitDocument split_sentences(std::string_view text);

}  // namespace scopeit::textprep

#endif  // SCOPEIT_TEXTPREP_SENTENCES_H_
