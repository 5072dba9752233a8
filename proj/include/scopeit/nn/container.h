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

#ifndef SCOPEIT_NN_CONTAINER_H_
#define SCOPEIT_NN_CONTAINER_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "scopeit/nn/parameter.h"

namespace scopeit::nn {

inline constexpr char kContainerMagic[4] = {'S', 'C', 'P', 'T'};
inline constexpr uint32_t kContainerVersion = 1;

struct NamedTensor {
  std::string name;
  std::vector<uint32_t> shape;
  std::vector<float> data;
};

// Layout, little-endian throughout:
//   "SCPT" u32 version
//   u32 header_length, header JSON bytes
//   u32 tensor_count
//   per tensor: u32 name_length, name, u8 rank, rank x u32 dims,
//               prod(dims) x f32
// The header JSON is stored as serialized, so a parsed container writes back
// the identical bytes.
struct Container {
  uint32_t version = kContainerVersion;
  std::string header;
  std::vector<NamedTensor> tensors;

  nlohmann::json header_json() const;
  const NamedTensor* find(std::string_view name) const;
};

std::string serialize_container(const Container& c);
Container parse_container(std::string_view bytes);
void save_container(const std::string& path, const Container& c);
Container load_container(const std::string& path);

template <typename T>
std::vector<NamedTensor> export_tensors(const std::vector<const Parameter<T>*>& params);

// Copies tensors into params by name. Missing tensors, shape differences and
// leftover tensors raise FormatError.
template <typename T>
void import_tensors(const std::vector<NamedTensor>& tensors, const ParameterRefs<T>& params);

}  // namespace scopeit::nn

#endif  // SCOPEIT_NN_CONTAINER_H_
