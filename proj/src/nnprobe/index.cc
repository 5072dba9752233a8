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

#include "scopeit/nnprobe/index.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "scopeit/common/error.h"
#include "scopeit/common/io.h"

namespace scopeit::nnprobe {
namespace {

constexpr std::string_view kMagic = "SCNI";
constexpr uint32_t kVersion = 1;

}  // namespace

std::string_view to_string(Metric m) { return m == Metric::kCosine ? "cosine" : "euclidean"; }

Metric metric_from_string(std::string_view s) {
  if (s == "euclidean") return Metric::kEuclidean;
  if (s == "cosine") return Metric::kCosine;
  throw ConfigError("unknown metric '" + std::string(s) + "'");
}

EmbeddingIndex::EmbeddingIndex(size_t dim, Metric metric) : dim_(dim), metric_(metric) {
  if (dim == 0) throw ShapeMismatch("index dimension must be positive");
}

void EmbeddingIndex::add(RowMeta meta, std::span<const float> vec) {
  if (vec.size() != dim_) {
    throw ShapeMismatch("index row has width " + std::to_string(vec.size()) + ", expected " +
                        std::to_string(dim_));
  }
  data_.insert(data_.end(), vec.begin(), vec.end());
  meta_.push_back(std::move(meta));
}

std::span<const float> EmbeddingIndex::row(size_t i) const {
  if (i >= size()) throw ShapeMismatch("row " + std::to_string(i) + " out of range");
  return std::span<const float>(data_).subspan(i * dim_, dim_);
}

double EmbeddingIndex::distance(std::span<const float> q, size_t r) const {
  std::span<const float> v = row(r);
  if (metric_ == Metric::kEuclidean) {
    double sum = 0;
    for (size_t j = 0; j < dim_; ++j) {
      double d = static_cast<double>(q[j]) - static_cast<double>(v[j]);
      sum += d * d;
    }
    return std::sqrt(sum);
  }
  double dot = 0, qq = 0, vv = 0;
  for (size_t j = 0; j < dim_; ++j) {
    dot += static_cast<double>(q[j]) * v[j];
    qq += static_cast<double>(q[j]) * q[j];
    vv += static_cast<double>(v[j]) * v[j];
  }
  if (qq == 0 || vv == 0) return 1.0;
  return 1.0 - dot / (std::sqrt(qq) * std::sqrt(vv));
}

std::vector<Neighbor> EmbeddingIndex::query(std::span<const float> q, size_t k) const {
  if (size() == 0) throw EmptyIndex("query against an empty index");
  if (q.size() != dim_) {
    throw ShapeMismatch("query has width " + std::to_string(q.size()) + ", expected " +
                        std::to_string(dim_));
  }
  std::vector<std::pair<double, size_t>> scored(size());
  for (size_t r = 0; r < size(); ++r) scored[r] = {distance(q, r), r};
  k = std::min(k, size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<long>(k), scored.end());
  std::vector<Neighbor> out;
  for (size_t i = 0; i < k; ++i) {
    Neighbor n;
    n.distance = scored[i].first;
    n.row = scored[i].second;
    n.meta = meta_[n.row];
    if (n.row > 0 && meta_[n.row - 1].doc_id == n.meta.doc_id &&
        meta_[n.row - 1].sentence + 1 == n.meta.sentence) {
      n.before = meta_[n.row - 1].text;
    }
    if (n.row + 1 < size() && meta_[n.row + 1].doc_id == n.meta.doc_id &&
        meta_[n.row + 1].sentence == n.meta.sentence + 1) {
      n.after = meta_[n.row + 1].text;
    }
    out.push_back(std::move(n));
  }
  return out;
}

void EmbeddingIndex::save(const std::string& path) const {
  ByteWriter w;
  w.bytes(kMagic);
  w.u32(kVersion);
  w.u64(size());
  w.u32(static_cast<uint32_t>(dim_));
  w.u8(metric_ == Metric::kCosine ? 1 : 0);
  for (float f : data_) w.f32(f);
  write_file(path, w.data());
  std::string lines;
  for (const RowMeta& m : meta_) {
    lines += nlohmann::json{{"doc_id", m.doc_id}, {"sentence", m.sentence}, {"text", m.text}}.dump();
    lines += '\n';
  }
  write_file(path + std::string(kMetadataExtension), lines);
}

EmbeddingIndex EmbeddingIndex::load(const std::string& path) {
  std::string bytes = read_file(path);
  ByteReader r(bytes);
  if (r.bytes(kMagic.size()) != kMagic) throw FormatError(path + ": not an embedding index");
  if (uint32_t v = r.u32(); v != kVersion) {
    throw FormatError(path + ": unsupported index version " + std::to_string(v));
  }
  uint64_t rows = r.u64();
  uint32_t dim = r.u32();
  uint8_t metric = r.u8();
  if (metric > 1) throw FormatError(path + ": unknown metric code");
  EmbeddingIndex index(dim, metric ? Metric::kCosine : Metric::kEuclidean);
  index.data_.resize(rows * dim);
  r.f32s(index.data_.data(), index.data_.size());
  if (!r.done()) throw FormatError(path + ": trailing bytes after index rows");
  std::string meta = read_file(path + std::string(kMetadataExtension));
  size_t pos = 0;
  while (pos < meta.size()) {
    size_t nl = meta.find('\n', pos);
    if (nl == std::string::npos) nl = meta.size();
    std::string_view line(meta.data() + pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      index.meta_.push_back({j.at("doc_id").get<std::string>(), j.at("sentence").get<size_t>(),
                             j.at("text").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(path + ": bad metadata line: " + e.what());
    }
  }
  if (index.meta_.size() != rows) {
    throw FormatError(path + ": " + std::to_string(rows) + " rows but " +
                      std::to_string(index.meta_.size()) + " metadata lines");
  }
  return index;
}

EmbeddingIndex build_index(const std::vector<corpus::LabeledDocument>& docs,
                           const model::ScopeItModel& model, size_t sample_size, uint64_t seed,
                           const model::EmbeddingStore* store, model::ProbeLayer layer,
                           Metric metric) {
  std::vector<size_t> picked(docs.size());
  std::iota(picked.begin(), picked.end(), 0);
  if (sample_size < docs.size()) {
    std::mt19937_64 rng(seed);
    std::shuffle(picked.begin(), picked.end(), rng);
    picked.resize(sample_size);
    std::sort(picked.begin(), picked.end());
  }
  const model::ModelConfig& c = model.config();
  size_t dim = layer == model::ProbeLayer::kContextual ? c.head_input_dim() : c.sentence_dim();
  EmbeddingIndex index(dim, metric);
  model::ScoreOptions opts;
  opts.keep_embeddings = true;
  opts.layer = layer;
  for (size_t i : picked) {
    const corpus::LabeledDocument& d = docs[i];
    model::RelevanceScores s = model.score(model.tokenize(d.doc), store, opts);
    for (size_t k = 0; k < s.size(); ++k) {
      index.add({d.id(), k, d.doc.original_sentence(k)}, s.embeddings[k]);
    }
  }
  return index;
}

}  // namespace scopeit::nnprobe
