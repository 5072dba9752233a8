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

#include "scopeit/nn/container.h"

#include <cstring>
#include <unordered_map>

#include "scopeit/common/error.h"
#include "scopeit/common/io.h"

namespace scopeit::nn {

nlohmann::json Container::header_json() const {
  try {
    return nlohmann::json::parse(header);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("checkpoint header is not JSON: ") + e.what());
  }
}

const NamedTensor* Container::find(std::string_view name) const {
  for (const NamedTensor& t : tensors) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

std::string serialize_container(const Container& c) {
  ByteWriter w;
  w.bytes(std::string_view(kContainerMagic, 4));
  w.u32(c.version);
  w.str(c.header);
  w.u32(static_cast<uint32_t>(c.tensors.size()));
  for (const NamedTensor& t : c.tensors) {
    size_t n = 1;
    for (uint32_t d : t.shape) n *= d;
    if (n != t.data.size()) throw FormatError("tensor " + t.name + " data does not match shape");
    w.str(t.name);
    w.u8(static_cast<uint8_t>(t.shape.size()));
    for (uint32_t d : t.shape) w.u32(d);
    for (float f : t.data) w.f32(f);
  }
  return w.release();
}

Container parse_container(std::string_view bytes) {
  ByteReader r(bytes);
  if (r.bytes(4) != std::string_view(kContainerMagic, 4)) {
    throw FormatError("not a checkpoint: bad magic");
  }
  Container c;
  c.version = r.u32();
  if (c.version != kContainerVersion) {
    throw FormatError("unsupported checkpoint version " + std::to_string(c.version));
  }
  c.header = r.str();
  uint32_t count = r.u32();
  for (uint32_t i = 0; i < count; ++i) {
    NamedTensor t;
    t.name = r.str();
    uint8_t rank = r.u8();
    size_t n = 1;
    for (uint8_t k = 0; k < rank; ++k) {
      t.shape.push_back(r.u32());
      n *= t.shape.back();
    }
    if (n > (bytes.size() - r.position()) / 4) throw FormatError("tensor " + t.name + " truncated");
    t.data.resize(n);
    r.f32s(t.data.data(), n);
    c.tensors.push_back(std::move(t));
  }
  if (!r.done()) throw FormatError("trailing bytes after checkpoint tensors");
  return c;
}

void save_container(const std::string& path, const Container& c) {
  write_file(path, serialize_container(c));
}

Container load_container(const std::string& path) { return parse_container(read_file(path)); }

template <typename T>
std::vector<NamedTensor> export_tensors(const std::vector<const Parameter<T>*>& params) {
  std::vector<NamedTensor> out;
  for (const Parameter<T>* p : params) {
    NamedTensor t;
    t.name = p->name;
    for (size_t d : p->shape) t.shape.push_back(static_cast<uint32_t>(d));
    // Row-major over the declared shape.
    t.data.reserve(p->size());
    for (Eigen::Index i = 0; i < p->value.rows(); ++i) {
      for (Eigen::Index j = 0; j < p->value.cols(); ++j) {
        t.data.push_back(static_cast<float>(p->value(i, j)));
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

template <typename T>
void import_tensors(const std::vector<NamedTensor>& tensors, const ParameterRefs<T>& params) {
  std::unordered_map<std::string_view, const NamedTensor*> by_name;
  for (const NamedTensor& t : tensors) by_name.emplace(t.name, &t);
  if (by_name.size() != params.size()) {
    throw FormatError("checkpoint has " + std::to_string(by_name.size()) +
                      " tensors, model expects " + std::to_string(params.size()));
  }
  for (Parameter<T>* p : params) {
    auto it = by_name.find(p->name);
    if (it == by_name.end()) throw FormatError("checkpoint lacks tensor " + p->name);
    const NamedTensor& t = *it->second;
    std::vector<uint32_t> expected(p->shape.begin(), p->shape.end());
    if (t.shape != expected) throw FormatError("tensor " + p->name + " has the wrong shape");
    size_t k = 0;
    for (Eigen::Index i = 0; i < p->value.rows(); ++i) {
      for (Eigen::Index j = 0; j < p->value.cols(); ++j) {
        p->value(i, j) = static_cast<T>(t.data[k++]);
      }
    }
  }
}

template std::vector<NamedTensor> export_tensors<float>(const std::vector<const Parameter<float>*>&);
template std::vector<NamedTensor> export_tensors<double>(
    const std::vector<const Parameter<double>*>&);
template void import_tensors<float>(const std::vector<NamedTensor>&, const ParameterRefs<float>&);
template void import_tensors<double>(const std::vector<NamedTensor>&, const ParameterRefs<double>&);

}  // namespace scopeit::nn
