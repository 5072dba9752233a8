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

#ifndef SCOPEIT_NNPROBE_INDEX_H_
#define SCOPEIT_NNPROBE_INDEX_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scopeit/corpus/corpus.h"
#include "scopeit/model/model.h"

namespace scopeit::nnprobe {

enum class Metric { kEuclidean, kCosine };
std::string_view to_string(Metric m);
Metric metric_from_string(std::string_view s);

struct RowMeta {
  std::string doc_id;
  size_t sentence = 0;
  std::string text;
};

struct Neighbor {
  size_t row = 0;
  double distance = 0;
  RowMeta meta;
  // Text of the adjacent sentences of the same document, empty at the edges.
  std::string before;
  std::string after;
};

// Exact k-NN over a dense row matrix. Ties in distance go to the lower row.
class EmbeddingIndex {
 public:
  EmbeddingIndex(size_t dim, Metric metric = Metric::kEuclidean);

  // Throws ShapeMismatch when the vector width differs from dim().
  void add(RowMeta meta, std::span<const float> vec);

  // Up to k neighbors, nearest first. Throws EmptyIndex on an empty index.
  std::vector<Neighbor> query(std::span<const float> q, size_t k = 3) const;
  double distance(std::span<const float> q, size_t row) const;

  size_t size() const { return meta_.size(); }
  size_t dim() const { return dim_; }
  Metric metric() const { return metric_; }
  std::span<const float> row(size_t i) const;
  const RowMeta& meta(size_t i) const { return meta_.at(i); }

  // Binary matrix at `path`, metadata as JSON lines at `path` + ".jsonl".
  void save(const std::string& path) const;
  static EmbeddingIndex load(const std::string& path);

 private:
  size_t dim_;
  Metric metric_;
  std::vector<float> data_;
  std::vector<RowMeta> meta_;
};

inline constexpr std::string_view kMetadataExtension = ".jsonl";

// Scores a seeded sample of `sample_size` documents (all of them when the
// corpus is smaller) and indexes one row per sentence.
EmbeddingIndex build_index(const std::vector<corpus::LabeledDocument>& docs,
                           const model::ScopeItModel& model, size_t sample_size, uint64_t seed,
                           const model::EmbeddingStore* store = nullptr,
                           model::ProbeLayer layer = model::ProbeLayer::kContextual,
                           Metric metric = Metric::kEuclidean);

}  // namespace scopeit::nnprobe

#endif  // SCOPEIT_NNPROBE_INDEX_H_
