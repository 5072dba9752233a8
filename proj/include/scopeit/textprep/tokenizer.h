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

#ifndef SCOPEIT_TEXTPREP_TOKENIZER_H_
#define SCOPEIT_TEXTPREP_TOKENIZER_H_

#include <string>
#include <string_view>
#include <vector>

#include "scopeit/textprep/vocabulary.h"

namespace scopeit::textprep {

inline constexpr size_t kDefaultMaxTokens = 128;
inline constexpr size_t kMaxWordPieceChars = 100;

// Whitespace split, then every punctuation character becomes its own word.
// URLTOKEN / EMAILTOKEN are cut out as standalone words wherever they occur.
std::vector<std::string> split_words(std::string_view sentence);

// Greedy longest-match-first wordpiece decomposition of each word. A word
// without a full decomposition becomes a single UNK.
std::vector<int> tokenize_wordpiece(std::string_view sentence, const Vocabulary& vocab);

// Lowercased word lookup; unknown words map to UNK.
std::vector<int> tokenize_words(std::string_view sentence, const Vocabulary& vocab);

// Dispatches on vocab.mode().
std::vector<int> tokenize(std::string_view sentence, const Vocabulary& vocab);

std::string ascii_lower(std::string_view s);

}  // namespace scopeit::textprep

#endif  // SCOPEIT_TEXTPREP_TOKENIZER_H_
