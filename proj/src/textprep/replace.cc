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

#include "scopeit/textprep/replace.h"

#include <algorithm>
#include <optional>
#include <regex>

#include "scopeit/common/error.h"

namespace scopeit::textprep {
namespace {

const std::regex& url_regex() {
  static const std::regex re(kUrlPattern);
  return re;
}

const std::regex& email_regex() {
  static const std::regex re(kEmailPattern);
  return re;
}

struct Match {
  size_t begin;
  size_t end;
  PlaceholderKind kind;
};

// URL matches over the whole text, with trailing punctuation trimmed. A match
// that no longer satisfies the pattern after trimming is dropped.
std::vector<Match> find_urls(std::string_view text) {
  std::vector<Match> out;
  const std::regex& re = url_regex();
  auto begin = std::cregex_iterator(text.data(), text.data() + text.size(), re);
  for (auto it = begin; it != std::cregex_iterator(); ++it) {
    size_t b = static_cast<size_t>(it->position(0));
    size_t e = b + static_cast<size_t>(it->length(0));
    while (e > b && kUrlTrailing.find(text[e - 1]) != std::string_view::npos) --e;
    std::string_view candidate = text.substr(b, e - b);
    if (!std::regex_match(candidate.begin(), candidate.end(), re)) continue;
    out.push_back({b, e, PlaceholderKind::kUrl});
  }
  return out;
}

void find_emails(std::string_view text, size_t offset, std::vector<Match>& out) {
  const std::regex& re = email_regex();
  auto begin = std::cregex_iterator(text.data(), text.data() + text.size(), re);
  for (auto it = begin; it != std::cregex_iterator(); ++it) {
    size_t b = offset + static_cast<size_t>(it->position(0));
    out.push_back({b, b + static_cast<size_t>(it->length(0)), PlaceholderKind::kEmail});
  }
}

void find_literals(std::string_view text, size_t offset, std::vector<Match>& out) {
  size_t pos = 0;
  while (pos < text.size()) {
    size_t u = text.find(kUrlToken, pos);
    size_t m = text.find(kEmailToken, pos);
    if (u == std::string_view::npos && m == std::string_view::npos) break;
    if (m == std::string_view::npos || (u != std::string_view::npos && u < m)) {
      out.push_back({offset + u, offset + u + kUrlToken.size(), PlaceholderKind::kUrl});
      pos = u + kUrlToken.size();
    } else {
      out.push_back({offset + m, offset + m + kEmailToken.size(), PlaceholderKind::kEmail});
      pos = m + kEmailToken.size();
    }
  }
}

// Applies `fn` to each gap between the sorted, disjoint `taken` spans.
template <typename Fn>
void for_each_gap(std::string_view text, const std::vector<Match>& taken, Fn fn) {
  size_t cursor = 0;
  for (const Match& m : taken) {
    if (m.begin > cursor) fn(text.substr(cursor, m.begin - cursor), cursor);
    cursor = m.end;
  }
  if (cursor < text.size()) fn(text.substr(cursor), cursor);
}

void sort_matches(std::vector<Match>& v) {
  std::sort(v.begin(), v.end(),
            [](const Match& a, const Match& b) { return a.begin < b.begin; });
}

struct Found {
  size_t pos;
  PlaceholderKind kind;
};

std::optional<Found> next_placeholder(std::string_view text, size_t from) {
  size_t u = text.find(kUrlToken, from);
  size_t m = text.find(kEmailToken, from);
  if (u == std::string_view::npos && m == std::string_view::npos) return std::nullopt;
  if (m == std::string_view::npos || (u != std::string_view::npos && u < m)) {
    return Found{u, PlaceholderKind::kUrl};
  }
  return Found{m, PlaceholderKind::kEmail};
}

// Replaces placeholders in `text` with the originals of `entries`, in order.
std::string substitute(std::string_view text,
                       const std::vector<const Replacement*>& entries,
                       std::string_view what) {
  std::string out;
  out.reserve(text.size());
  size_t cursor = 0;
  size_t next = 0;
  while (auto found = next_placeholder(text, cursor)) {
    if (next >= entries.size()) {
      throw MalformedPlaceholder("placeholder at byte " + std::to_string(found->pos) +
                                 " of " + std::string(what) + " has no map entry");
    }
    const Replacement& r = *entries[next++];
    if (r.kind != found->kind) {
      throw MalformedPlaceholder("placeholder kind mismatch at byte " +
                                 std::to_string(found->pos) + " of " + std::string(what));
    }
    out.append(text.substr(cursor, found->pos - cursor));
    out += r.original;
    cursor = found->pos + placeholder(found->kind).size();
  }
  out.append(text.substr(cursor));
  return out;
}

}  // namespace

std::string_view placeholder(PlaceholderKind kind) {
  return kind == PlaceholderKind::kUrl ? kUrlToken : kEmailToken;
}

size_t ReplacementMap::count(PlaceholderKind kind) const {
  return static_cast<size_t>(std::count_if(
      entries.begin(), entries.end(),
      [kind](const Replacement& r) { return r.kind == kind; }));
}

CleanedText replace_urls_emails(std::string_view text) {
  std::vector<Match> matches = find_urls(text);
  std::vector<Match> more;
  for_each_gap(text, matches, [&](std::string_view gap, size_t offset) {
    find_emails(gap, offset, more);
  });
  matches.insert(matches.end(), more.begin(), more.end());
  sort_matches(matches);
  more.clear();
  for_each_gap(text, matches, [&](std::string_view gap, size_t offset) {
    find_literals(gap, offset, more);
  });
  matches.insert(matches.end(), more.begin(), more.end());
  sort_matches(matches);

  CleanedText out;
  out.text.reserve(text.size());
  size_t cursor = 0;
  for (const Match& m : matches) {
    out.text.append(text.substr(cursor, m.begin - cursor));
    Replacement r;
    r.kind = m.kind;
    r.original = std::string(text.substr(m.begin, m.end - m.begin));
    r.begin = out.text.size();
    out.text += placeholder(m.kind);
    r.end = out.text.size();
    out.map.entries.push_back(std::move(r));
    cursor = m.end;
  }
  out.text.append(text.substr(cursor));
  return out;
}

std::string invert_replacements(std::string_view text, const ReplacementMap& map) {
  std::vector<const Replacement*> entries;
  entries.reserve(map.entries.size());
  for (const Replacement& r : map.entries) entries.push_back(&r);
  return substitute(text, entries, "text");
}

std::string invert_sentence(std::string_view text, int sentence_index,
                            const ReplacementMap& map) {
  std::vector<const Replacement*> entries;
  for (const Replacement& r : map.entries) {
    if (r.sentence == sentence_index) entries.push_back(&r);
  }
  std::sort(entries.begin(), entries.end(),
            [](const Replacement* a, const Replacement* b) {
              return a->occurrence < b->occurrence;
            });
  return substitute(text, entries, "sentence " + std::to_string(sentence_index));
}

void assign_sentences(ReplacementMap& map, const std::vector<SentenceSpan>& sentences) {
  size_t s = 0;
  int occurrence = 0;
  for (Replacement& r : map.entries) {
    r.sentence = -1;
    r.occurrence = -1;
    while (s < sentences.size() && sentences[s].end <= r.begin) {
      ++s;
      occurrence = 0;
    }
    if (s < sentences.size() && sentences[s].begin <= r.begin && r.end <= sentences[s].end) {
      r.sentence = static_cast<int>(s);
      r.occurrence = occurrence++;
    }
  }
}

}  // namespace scopeit::textprep
