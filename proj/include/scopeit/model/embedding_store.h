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

#ifndef SCOPEIT_MODEL_EMBEDDING_STORE_H_
#define SCOPEIT_MODEL_EMBEDDING_STORE_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace scopeit::model {

inline constexpr char kStoreMagic[4] = {'S', 'C', 'E', 'S'};
inline constexpr uint32_t kStoreVersion = 1;

struct SentenceVectors {
  size_t token_count = 0;
  // dim floats, or empty when the exporter wrote no CLS vector.
  std::vector<float> cls;
  // token_count * dim floats, token-major.
  std::vector<float> tokens;

  const float* token(size_t i, size_t dim) const { return tokens.data() + i * dim; }
};

// Frozen per-token vectors keyed by (document id, sentence index).
//
// File layout, little-endian:
//   "SCES" u32 version u32 dim u64 vocab_hash u32 doc_count
//   per document: u32 id_length, id bytes, u32 sentence_count
//   per sentence: u32 token_count, u8 has_cls, [dim x f32 cls],
//                 token_count x dim x f32
// vocab_hash is the FNV-1a 64 hash of the vocabulary file the tokens came
// from.
class EmbeddingStore {
 public:
  EmbeddingStore() = default;
  EmbeddingStore(size_t dim, uint64_t vocab_hash) : dim_(dim), vocab_hash_(vocab_hash) {}

  static EmbeddingStore parse(std::string_view bytes);
  static EmbeddingStore load(const std::string& path);
  std::string serialize() const;
  void save(const std::string& path) const;

  void add_document(const std::string& doc_id, std::vector<SentenceVectors> sentences);

  // Throws MissingEmbedding when the key is absent.
  const SentenceVectors& at(const std::string& doc_id, size_t sentence) const;
  bool contains(const std::string& doc_id) const { return docs_.count(doc_id) != 0; }

  size_t dim() const { return dim_; }
  uint64_t vocab_hash() const { return vocab_hash_; }
  size_t document_count() const { return docs_.size(); }

 private:
  size_t dim_ = 0;
  uint64_t vocab_hash_ = 0;
  // Insertion order is kept for serialization.
  std::vector<std::string> order_;
  std::map<std::string, std::vector<SentenceVectors>, std::less<>> docs_;
};

}  // namespace scopeit::model

#endif  // SCOPEIT_MODEL_EMBEDDING_STORE_H_
