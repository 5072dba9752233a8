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

#include "scopeit/textprep/tokenizer.h"

#include <cctype>

#include "scopeit/common/utf8.h"
#include "scopeit/textprep/replace.h"

namespace scopeit::textprep {
namespace {

bool is_space_cp(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' ||
         cp == '\v' || cp == 0xa0 || cp == 0x2028 || cp == 0x2029;
}

bool is_punct_cp(char32_t cp) {
  if (cp < 0x80) return std::ispunct(static_cast<int>(cp)) != 0;
  // Latin-1 punctuation and the General Punctuation block.
  return (cp >= 0xa1 && cp <= 0xbf && cp != 0xaa && cp != 0xb5 && cp != 0xba) ||
         cp == 0xd7 || cp == 0xf7 || (cp >= 0x2010 && cp <= 0x205e);
}

void split_plain(std::string_view text, std::vector<std::string>& out) {
  std::string current;
  size_t pos = 0;
  while (pos < text.size()) {
    utf8::Decoded d = utf8::decode(text, pos);
    std::string_view bytes = text.substr(pos, d.length);
    pos += d.length;
    if (is_space_cp(d.cp)) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else if (is_punct_cp(d.cp)) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
      out.emplace_back(bytes);
    } else {
      current.append(bytes);
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
}

// Code point boundaries of `word`, including 0 and word.size().
std::vector<size_t> boundaries(std::string_view word) {
  std::vector<size_t> b{0};
  for (size_t pos = 0; pos < word.size();) {
    pos += utf8::decode(word, pos).length;
    b.push_back(pos);
  }
  return b;
}

void wordpiece_word(std::string_view word, const Vocabulary& vocab, std::vector<int>& out) {
  if (word == kUrlToken) {
    out.push_back(Vocabulary::kUrl);
    return;
  }
  if (word == kEmailToken) {
    out.push_back(Vocabulary::kEmail);
    return;
  }
  std::vector<size_t> b = boundaries(word);
  size_t n_chars = b.size() - 1;
  if (n_chars > kMaxWordPieceChars) {
    out.push_back(Vocabulary::kUnk);
    return;
  }
  std::vector<int> pieces;
  size_t start = 0;
  std::string candidate;
  while (start < n_chars) {
    int found = -1;
    size_t end = n_chars;
    for (; end > start; --end) {
      candidate.clear();
      if (start > 0) candidate += kContinuationPrefix;
      candidate.append(word.substr(b[start], b[end] - b[start]));
      if (auto id = vocab.find(candidate)) {
        found = *id;
        break;
      }
    }
    if (found < 0) {
      out.push_back(Vocabulary::kUnk);
      return;
    }
    pieces.push_back(found);
    start = end;
  }
  out.insert(out.end(), pieces.begin(), pieces.end());
}

}  // namespace

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> split_words(std::string_view sentence) {
  std::vector<std::string> out;
  size_t cursor = 0;
  while (cursor < sentence.size()) {
    size_t u = sentence.find(kUrlToken, cursor);
    size_t m = sentence.find(kEmailToken, cursor);
    size_t at = std::min(u, m);
    if (at == std::string_view::npos) break;
    std::string_view tok = at == u ? kUrlToken : kEmailToken;
    split_plain(sentence.substr(cursor, at - cursor), out);
    out.emplace_back(tok);
    cursor = at + tok.size();
  }
  split_plain(sentence.substr(cursor), out);
  return out;
}

std::vector<int> tokenize_wordpiece(std::string_view sentence, const Vocabulary& vocab) {
  std::vector<int> out;
  for (const std::string& w : split_words(sentence)) wordpiece_word(w, vocab, out);
  return out;
}

std::vector<int> tokenize_words(std::string_view sentence, const Vocabulary& vocab) {
  std::vector<int> out;
  for (const std::string& w : split_words(sentence)) {
    if (w == kUrlToken) {
      out.push_back(Vocabulary::kUrl);
    } else if (w == kEmailToken) {
      out.push_back(Vocabulary::kEmail);
    } else {
      out.push_back(vocab.id_or_unk(ascii_lower(w)));
    }
  }
  return out;
}

std::vector<int> tokenize(std::string_view sentence, const Vocabulary& vocab) {
  return vocab.mode() == VocabMode::kWordPiece ? tokenize_wordpiece(sentence, vocab)
                                               : tokenize_words(sentence, vocab);
}

}  // namespace scopeit::textprep
