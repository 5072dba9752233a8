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

#ifndef SCOPEIT_TEXTPREP_VOCABULARY_H_
#define SCOPEIT_TEXTPREP_VOCABULARY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace scopeit::textprep {

enum class VocabMode { kWordPiece, kWord };

std::string_view to_string(VocabMode mode);
VocabMode vocab_mode_from_string(std::string_view s);

inline constexpr std::string_view kContinuationPrefix = "##";
inline constexpr size_t kDefaultWordVocabSize = 10000;

// Immutable token <-> id table. The file format is one token per line, line
// number = id, with PAD, UNK, URLTOKEN, EMAILTOKEN on lines 0-3.
class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kUrl = 2;
  static constexpr int kEmail = 3;

  // Throws VocabularyError when the reserved tokens are missing or a token
  // repeats.
  Vocabulary(std::vector<std::string> tokens, VocabMode mode);

  static Vocabulary load(const std::string& path, VocabMode mode);
  static Vocabulary parse(std::string_view file_contents, VocabMode mode);

  // Keeps the `top_k` most frequent lowercased word tokens of `sentences`
  // (ties broken by byte order) after the reserved tokens.
  static Vocabulary build_word_level(std::span<const std::string> sentences,
                                     size_t top_k = kDefaultWordVocabSize);

  // Subword vocabulary derived from a corpus: every character seen, both
  // word-initial and with the continuation prefix, then the most frequent
  // whole words up to `max_size` entries. Every corpus word decomposes.
  static Vocabulary build_wordpiece(std::span<const std::string> sentences,
                                    size_t max_size = 30000);

  std::string serialize() const;
  void save(const std::string& path) const;

  std::optional<int> find(std::string_view token) const;
  int id_or_unk(std::string_view token) const;
  const std::string& token(int id) const { return tokens_.at(static_cast<size_t>(id)); }
  size_t size() const { return tokens_.size(); }
  VocabMode mode() const { return mode_; }
  const std::vector<std::string>& tokens() const { return tokens_; }

  // FNV-1a 64 of the serialized file; identifies the vocabulary everywhere a
  // mismatch must be refused.
  uint64_t hash() const { return hash_; }
  std::string id() const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
  VocabMode mode_;
  uint64_t hash_ = 0;
};

}  // namespace scopeit::textprep

#endif  // SCOPEIT_TEXTPREP_VOCABULARY_H_
