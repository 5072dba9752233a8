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

#ifndef SCOPEIT_NN_PARAMETER_H_
#define SCOPEIT_NN_PARAMETER_H_

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace scopeit::nn {

template <typename T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

// A named trainable tensor. Vectors (rank 1) are stored as n x 1 columns.
template <typename T>
struct Parameter {
  std::string name;
  std::vector<size_t> shape;
  Matrix<T> value;
  Matrix<T> grad;

  static Parameter matrix(std::string name, size_t rows, size_t cols) {
    return {std::move(name), {rows, cols}, Matrix<T>::Zero(rows, cols), {}};
  }
  static Parameter vector(std::string name, size_t n) {
    return {std::move(name), {n}, Matrix<T>::Zero(n, 1), {}};
  }

  size_t size() const { return static_cast<size_t>(value.size()); }
  void zero_grad() { grad = Matrix<T>::Zero(value.rows(), value.cols()); }
};

// Non-owning, ordered view over a model's parameters. The order is the
// serialization and optimizer-state order.
template <typename T>
using ParameterRefs = std::vector<Parameter<T>*>;

template <typename T>
void init_uniform(Parameter<T>& p, double bound, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  for (Eigen::Index i = 0; i < p.value.size(); ++i) p.value.data()[i] = static_cast<T>(dist(rng));
}

template <typename T>
void init_normal(Parameter<T>& p, double stddev, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, stddev);
  for (Eigen::Index i = 0; i < p.value.size(); ++i) p.value.data()[i] = static_cast<T>(dist(rng));
}

}  // namespace scopeit::nn

#endif  // SCOPEIT_NN_PARAMETER_H_
