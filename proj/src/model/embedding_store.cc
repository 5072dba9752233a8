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

#include "scopeit/model/embedding_store.h"

#include "scopeit/common/error.h"
#include "scopeit/common/io.h"

namespace scopeit::model {

EmbeddingStore EmbeddingStore::parse(std::string_view bytes) {
  ByteReader r(bytes);
  if (r.bytes(4) != std::string_view(kStoreMagic, 4)) {
    throw FormatError("not an embedding store: bad magic");
  }
  uint32_t version = r.u32();
  if (version != kStoreVersion) {
    throw FormatError("unsupported embedding store version " + std::to_string(version));
  }
  uint32_t dim = r.u32();
  uint64_t hash = r.u64();
  EmbeddingStore store(dim, hash);
  uint32_t docs = r.u32();
  for (uint32_t d = 0; d < docs; ++d) {
    std::string id = r.str();
    uint32_t count = r.u32();
    std::vector<SentenceVectors> sentences(count);
    for (SentenceVectors& s : sentences) {
      s.token_count = r.u32();
      if (r.u8()) {
        s.cls.resize(dim);
        r.f32s(s.cls.data(), dim);
      }
      size_t n = s.token_count * dim;
      if (n > (bytes.size() - r.position()) / 4) throw FormatError("embedding record truncated");
      s.tokens.resize(n);
      r.f32s(s.tokens.data(), n);
    }
    store.add_document(id, std::move(sentences));
  }
  if (!r.done()) throw FormatError("trailing bytes after embedding store");
  return store;
}

EmbeddingStore EmbeddingStore::load(const std::string& path) { return parse(read_file(path)); }

std::string EmbeddingStore::serialize() const {
  ByteWriter w;
  w.bytes(std::string_view(kStoreMagic, 4));
  w.u32(kStoreVersion);
  w.u32(static_cast<uint32_t>(dim_));
  w.u64(vocab_hash_);
  w.u32(static_cast<uint32_t>(order_.size()));
  for (const std::string& id : order_) {
    const auto& sentences = docs_.find(id)->second;
    w.str(id);
    w.u32(static_cast<uint32_t>(sentences.size()));
    for (const SentenceVectors& s : sentences) {
      w.u32(static_cast<uint32_t>(s.token_count));
      w.u8(s.cls.empty() ? 0 : 1);
      for (float f : s.cls) w.f32(f);
      for (float f : s.tokens) w.f32(f);
    }
  }
  return w.release();
}

void EmbeddingStore::save(const std::string& path) const { write_file(path, serialize()); }

void EmbeddingStore::add_document(const std::string& doc_id,
                                  std::vector<SentenceVectors> sentences) {
  for (const SentenceVectors& s : sentences) {
    if (s.tokens.size() != s.token_count * dim_ || (!s.cls.empty() && s.cls.size() != dim_)) {
      throw FormatError("embedding record for " + doc_id + " does not match dim " +
                        std::to_string(dim_));
    }
  }
  if (!docs_.emplace(doc_id, std::move(sentences)).second) {
    throw FormatError("duplicate document '" + doc_id + "' in embedding store");
  }
  order_.push_back(doc_id);
}

const SentenceVectors& EmbeddingStore::at(const std::string& doc_id, size_t sentence) const {
  auto it = docs_.find(doc_id);
  if (it == docs_.end()) throw MissingEmbedding("no embeddings for document '" + doc_id + "'");
  if (sentence >= it->second.size()) {
    throw MissingEmbedding("no embeddings for sentence " + std::to_string(sentence) + " of '" +
                           doc_id + "'");
  }
  return it->second[sentence];
}

}  // namespace scopeit::model
