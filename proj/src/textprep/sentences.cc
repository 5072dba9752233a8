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

#include "scopeit/textprep/sentences.h"

#include <algorithm>
#include <array>
#include <cctype>

#include "scopeit/common/utf8.h"

namespace scopeit::textprep {
namespace {

constexpr std::array<std::string_view, 8> kAbbreviations = {
    "mr.", "mrs.", "ms.", "dr.", "e.g.", "i.e.", "etc.", "vs."};

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

bool is_capital_at(std::string_view text, size_t pos) {
  utf8::Decoded d = utf8::decode(text, pos);
  if (d.cp >= 'A' && d.cp <= 'Z') return true;
  // Latin-1 uppercase letters, excluding the multiplication sign.
  return d.cp >= 0xc0 && d.cp <= 0xde && d.cp != 0xd7;
}

// The whitespace-delimited word ending at `end` (exclusive), lowercased.
std::string word_before(std::string_view text, size_t begin, size_t end) {
  size_t start = end;
  while (start > begin && !is_space(text[start - 1])) --start;
  std::string w(text.substr(start, end - start));
  // Leading openers do not change the abbreviation test.
  size_t lead = 0;
  while (lead < w.size() && (w[lead] == '(' || w[lead] == '"' || w[lead] == '\'')) ++lead;
  w.erase(0, lead);
  for (char& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return w;
}

bool is_abbreviation(std::string_view word) {
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end();
}

struct Segment {
  size_t begin;
  size_t end;
  int passage;
};

std::string_view trim_view(std::string_view s) {
  size_t b = 0;
  while (b < s.size() && is_space(s[b])) ++b;
  size_t e = s.size();
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

// Groups lines into runs that may hold several sentences.
std::vector<Segment> line_segments(std::string_view text) {
  std::vector<Segment> out;
  int passage = 0;
  bool open = false;
  bool saw_blank = false;
  size_t seg_begin = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    size_t line_end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(pos, line_end - pos);
    std::string_view body = trim_view(line);
    if (body.empty()) {
      if (open) {
        out.push_back({seg_begin, pos, passage});
        open = false;
      }
      saw_blank = true;
    } else {
      if (!open) {
        if (saw_blank && !out.empty()) ++passage;
        saw_blank = false;
        seg_begin = pos;
        open = true;
      }
      bool short_line = utf8::count_code_points(body) < kShortLineLength;
      bool ends_terminal = is_terminal(body.back()) ||
                           (body.size() > 1 && is_closer(body.back()) &&
                            is_terminal(body[body.size() - 2]));
      if (short_line || ends_terminal || nl == std::string_view::npos) {
        out.push_back({seg_begin, line_end, passage});
        open = false;
      }
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (open) out.push_back({seg_begin, text.size(), passage});
  return out;
}

void emit(std::string_view text, size_t b, size_t e, int passage,
          SentenceSplitDocument& doc) {
  while (b < e && is_space(text[b])) ++b;
  while (e > b && is_space(text[e - 1])) --e;
  if (b == e) return;
  doc.sentences.emplace_back(text.substr(b, e - b));
  doc.offsets.push_back({b, e});
  doc.passages.push_back(passage);
}

void split_segment(std::string_view text, const Segment& seg, SentenceSplitDocument& doc) {
  size_t start = seg.begin;
  size_t i = seg.begin;
  while (i < seg.end) {
    if (!is_terminal(text[i])) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < seg.end && is_terminal(text[j])) ++j;
    while (j < seg.end && is_closer(text[j])) ++j;
    size_t k = j;
    while (k < seg.end && is_space(text[k])) ++k;
    bool boundary = k > j && k < seg.end && is_capital_at(text, k);
    if (boundary && text[j - 1] == '.' && is_abbreviation(word_before(text, start, j))) {
      boundary = false;
    }
    if (boundary) {
      emit(text, start, j, seg.passage, doc);
      start = k;
    }
    i = j;
  }
  emit(text, start, seg.end, seg.passage, doc);
}

}  // namespace

SentenceSplitDocument split_sentences(std::string_view text) {
  SentenceSplitDocument doc;
  for (const Segment& seg : line_segments(text)) split_segment(text, seg, doc);
  // Passage ids restart at zero and stay dense.
  int last = -1;
  int next = -1;
  for (int& p : doc.passages) {
    if (p != last) {
      last = p;
      ++next;
    }
    p = next;
  }
  return doc;
}

}  // namespace scopeit::textprep
