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

#ifndef SCOPEIT_TEXTPREP_REPLACE_H_
#define SCOPEIT_TEXTPREP_REPLACE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace scopeit::textprep {

inline constexpr std::string_view kUrlToken = "URLTOKEN";
inline constexpr std::string_view kEmailToken = "EMAILTOKEN";

// Exact patterns. Trailing characters in kUrlTrailing are trimmed off a URL
// match and stay in the text.
inline constexpr const char* kUrlPattern = R"((https?://[^\s]+|www\.[^\s]+))";
inline constexpr const char* kEmailPattern =
    R"([A-Za-z0-9._%+-]+@[A-Za-z0-9.-]+\.[A-Za-z]{2,})";
inline constexpr std::string_view kUrlTrailing = ".,;:!?)";

enum class PlaceholderKind { kUrl, kEmail };

std::string_view placeholder(PlaceholderKind kind);

struct Replacement {
  PlaceholderKind kind;
  std::string original;
  // Byte span of the placeholder in the cleaned text.
  size_t begin = 0;
  size_t end = 0;
  // Filled by assign_sentences: owning sentence and the placeholder's
  // occurrence index inside that sentence. -1 until assigned.
  int sentence = -1;
  int occurrence = -1;
};

// Entries are in order of occurrence; spans are non-overlapping and strictly
// increasing.
struct ReplacementMap {
  std::vector<Replacement> entries;

  size_t count(PlaceholderKind kind) const;
  bool empty() const { return entries.empty(); }
};

struct CleanedText {
  std::string text;
  ReplacementMap map;
};

// Replaces each URL with URLTOKEN and each email address with EMAILTOKEN.
// Literal placeholder strings already present in the input are recorded too
// (their original is the literal), which keeps inversion total.
CleanedText replace_urls_emails(std::string_view text);

// Full-text inversion: placeholders are paired left to right with the map
// entries. Throws MalformedPlaceholder when the text has more placeholders
// than the map, or a placeholder kind disagrees with its entry.
std::string invert_replacements(std::string_view text,
                                const ReplacementMap& map);

// Inverts one sentence of a scoped subset: the placeholders in `text` pair
// with the entries recorded for `sentence_index`, in occurrence order.
// Entries of other sentences are ignored, so dropping sentences never
// disturbs the survivors.
std::string invert_sentence(std::string_view text, int sentence_index,
                            const ReplacementMap& map);

struct SentenceSpan {
  size_t begin = 0;
  size_t end = 0;
};

// Records the owning sentence and per-sentence occurrence index of every
// entry. Entries outside all sentence spans keep sentence = -1.
void assign_sentences(ReplacementMap& map,
                      const std::vector<SentenceSpan>& sentences);

}  // namespace scopeit::textprep

#endif  // SCOPEIT_TEXTPREP_REPLACE_H_
