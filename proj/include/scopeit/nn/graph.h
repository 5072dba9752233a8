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

#ifndef SCOPEIT_NN_GRAPH_H_
#define SCOPEIT_NN_GRAPH_H_

#include <cstdint>
#include <deque>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "scopeit/nn/parameter.h"

namespace scopeit::nn {

// Handle to a node of a Graph.
struct Var {
  int id = -1;
};

// Reverse-mode differentiation over a tape of dense matrix operations.
//
// Nodes are appended in evaluation order, so the tape is already a
// topological order and backward() is a single reverse sweep. Each parameter
// gets exactly one leaf node; its accumulated gradient is read back with
// gradient(). A graph built with record_gradients = false keeps values only,
// which is the inference path.
//
// Sequences are laid out column-wise: a batch of B vectors is a (dim x B)
// matrix and T steps of such batches are (dim x T*B), step t occupying
// columns [t*B, (t+1)*B).
template <typename T>
class Graph {
 public:
  using Mat = Matrix<T>;
  // One flag per column; 1 selects the fresh value in mask_blend.
  using ColumnMask = std::vector<uint8_t>;

  explicit Graph(bool record_gradients = true) : record_(record_gradients) {}
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  Var constant(Mat value);
  // Leaf that references p.value without copying it.
  Var param(const Parameter<T>& p);

  Var matmul(Var a, Var b);
  // w * x + bias, with the bias column broadcast over x's columns.
  Var affine(Var w, Var x, Var bias);
  Var add(Var a, Var b);
  Var mul(Var a, Var b);
  Var one_minus(Var a);
  Var sigmoid(Var a);
  Var tanh(Var a);
  // Column j is fresh.col(j) when mask[j] is set, keep.col(j) otherwise.
  Var mask_blend(Var fresh, Var keep, const ColumnMask& mask);
  Var concat_rows(std::span<const Var> parts);
  Var concat_cols(std::span<const Var> parts);
  Var slice_cols(Var a, Eigen::Index start, Eigen::Index count);
  // Column k is a.col(cols[k]); negative indices produce zero columns.
  Var gather_cols(Var a, std::span<const int> cols);
  // Column k is table.row(ids[k]) transposed; negative ids give zero
  // columns. The table is (rows x dim), one embedding per row.
  Var lookup(Var table, std::span<const int> ids);
  // sum_k weights_k * (softplus(x_k) - y_k * x_k): binary cross entropy on
  // sigmoid(x) evaluated in the logit domain. Returns a 1x1 node.
  Var bce_with_logits(Var logits, const Mat& targets, const Mat& weights);
  // Same loss on probabilities, clamped to [eps, 1 - eps]. The clamp has
  // zero derivative outside the interval.
  Var bce_probs(Var probs, const Mat& targets, const Mat& weights, T eps);

  const Mat& value(Var v) const;
  T scalar(Var v) const { return value(v)(0, 0); }

  // Seeds d(root)/d(root) = 1 and propagates to every node.
  void backward(Var root);
  // Accumulated gradient of a parameter leaf; nullptr if p never entered
  // the graph or received no gradient.
  const Mat* gradient(const Parameter<T>& p) const;

  size_t size() const { return nodes_.size(); }
  bool recording() const { return record_; }

 private:
  struct Node {
    Mat own;
    const Mat* ref = nullptr;
    Mat grad;
    bool has_grad = false;
    bool requires_grad = false;
    std::function<void()> back;
  };

  Var push(Mat value, bool requires_grad);
  const Mat& val(int id) const;
  Mat& grad(int id);
  bool needs(Var v) const { return nodes_[static_cast<size_t>(v.id)].requires_grad; }
  bool any_needs(std::span<const Var> vs) const;
  void set_back(Var out, std::function<void()> fn);

  bool record_;
  std::deque<Node> nodes_;
  std::unordered_map<const Parameter<T>*, int> leaves_;
};

extern template class Graph<float>;
extern template class Graph<double>;

}  // namespace scopeit::nn

#endif  // SCOPEIT_NN_GRAPH_H_
