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

#include "scopeit/textprep/vocabulary.h"

#include <algorithm>
#include <map>

#include "scopeit/common/error.h"
#include "scopeit/common/hash.h"
#include "scopeit/common/io.h"
#include "scopeit/common/utf8.h"
#include "scopeit/textprep/replace.h"
#include "scopeit/textprep/tokenizer.h"

namespace scopeit::textprep {
namespace {

constexpr std::string_view kReserved[] = {"[PAD]", "[UNK]", kUrlToken, kEmailToken};

}  // namespace

std::string_view to_string(VocabMode mode) {
  return mode == VocabMode::kWordPiece ? "wordpiece" : "word";
}

VocabMode vocab_mode_from_string(std::string_view s) {
  if (s == "wordpiece") return VocabMode::kWordPiece;
  if (s == "word") return VocabMode::kWord;
  throw VocabularyError("unknown vocabulary mode '" + std::string(s) + "'");
}

Vocabulary::Vocabulary(std::vector<std::string> tokens, VocabMode mode)
    : tokens_(std::move(tokens)), mode_(mode) {
  if (tokens_.size() < 4) throw VocabularyError("vocabulary lacks reserved tokens");
  for (size_t i = 0; i < 4; ++i) {
    if (tokens_[i] != kReserved[i]) {
      throw VocabularyError("line " + std::to_string(i) + " must be " +
                            std::string(kReserved[i]) + ", found '" + tokens_[i] + "'");
    }
  }
  index_.reserve(tokens_.size());
  for (size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i].empty()) throw VocabularyError("empty token on line " + std::to_string(i));
    if (!index_.emplace(tokens_[i], static_cast<int>(i)).second) {
      throw VocabularyError("duplicate token '" + tokens_[i] + "'");
    }
  }
  hash_ = fnv1a64(serialize());
}

Vocabulary Vocabulary::load(const std::string& path, VocabMode mode) {
  return parse(read_file(path), mode);
}

Vocabulary Vocabulary::parse(std::string_view contents, VocabMode mode) {
  std::vector<std::string> tokens;
  size_t pos = 0;
  while (pos < contents.size()) {
    size_t nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    std::string_view line = contents.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    tokens.emplace_back(line);
    pos = nl + 1;
  }
  return Vocabulary(std::move(tokens), mode);
}

Vocabulary Vocabulary::build_word_level(std::span<const std::string> sentences, size_t top_k) {
  std::map<std::string, size_t> counts;
  for (const std::string& s : sentences) {
    for (const std::string& w : split_words(s)) {
      if (w == kUrlToken || w == kEmailToken) continue;
      ++counts[ascii_lower(w)];
    }
  }
  for (std::string_view r : kReserved) counts.erase(std::string(r));
  std::vector<std::pair<std::string, size_t>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > top_k) ranked.resize(top_k);
  std::vector<std::string> tokens(std::begin(kReserved), std::end(kReserved));
  for (auto& [tok, n] : ranked) tokens.push_back(tok);
  return Vocabulary(std::move(tokens), VocabMode::kWord);
}

Vocabulary Vocabulary::build_wordpiece(std::span<const std::string> sentences, size_t max_size) {
  std::map<std::string, size_t> words;
  std::map<std::string, size_t> chars;
  for (const std::string& s : sentences) {
    for (const std::string& w : split_words(s)) {
      if (w == kUrlToken || w == kEmailToken) continue;
      ++words[w];
      for (size_t pos = 0; pos < w.size();) {
        size_t len = utf8::decode(w, pos).length;
        std::string c = w.substr(pos, len);
        ++chars[pos == 0 ? c : std::string(kContinuationPrefix) + c];
        pos += len;
      }
    }
  }
  std::vector<std::string> tokens(std::begin(kReserved), std::end(kReserved));
  std::unordered_map<std::string, bool> seen;
  for (const std::string& t : tokens) seen[t] = true;
  for (const auto& [c, n] : chars) {
    if (seen.emplace(c, true).second) tokens.push_back(c);
  }
  std::vector<std::pair<std::string, size_t>> ranked(words.begin(), words.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  for (auto& [w, n] : ranked) {
    if (tokens.size() >= max_size) break;
    if (seen.emplace(w, true).second) tokens.push_back(w);
  }
  return Vocabulary(std::move(tokens), VocabMode::kWordPiece);
}

std::string Vocabulary::serialize() const {
  std::string out;
  for (const std::string& t : tokens_) {
    out += t;
    out += '\n';
  }
  return out;
}

void Vocabulary::save(const std::string& path) const { write_file(path, serialize()); }

std::optional<int> Vocabulary::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Vocabulary::id_or_unk(std::string_view token) const {
  return find(token).value_or(kUnk);
}

std::string Vocabulary::id() const { return "fnv1a64:" + hex64(hash_); }

}  // namespace scopeit::textprep
