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

#include "scopeit/nn/graph.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "scopeit/common/error.h"

namespace scopeit::nn {
namespace {

template <typename M>
std::string dims(const M& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

template <typename T>
T stable_sigmoid(T x) {
  if (x >= 0) return T(1) / (T(1) + std::exp(-x));
  T e = std::exp(x);
  return e / (T(1) + e);
}

template <typename T>
T softplus(T x) {
  return std::max(x, T(0)) + std::log1p(std::exp(-std::abs(x)));
}

}  // namespace

template <typename T>
Var Graph<T>::push(Mat value, bool requires_grad) {
  Node n;
  n.own = std::move(value);
  n.requires_grad = record_ && requires_grad;
  nodes_.push_back(std::move(n));
  return Var{static_cast<int>(nodes_.size() - 1)};
}

template <typename T>
const typename Graph<T>::Mat& Graph<T>::val(int id) const {
  const Node& n = nodes_[static_cast<size_t>(id)];
  return n.ref ? *n.ref : n.own;
}

template <typename T>
const typename Graph<T>::Mat& Graph<T>::value(Var v) const {
  return val(v.id);
}

template <typename T>
typename Graph<T>::Mat& Graph<T>::grad(int id) {
  Node& n = nodes_[static_cast<size_t>(id)];
  if (!n.has_grad) {
    const Mat& v = val(id);
    n.grad = Mat::Zero(v.rows(), v.cols());
    n.has_grad = true;
  }
  return n.grad;
}

template <typename T>
bool Graph<T>::any_needs(std::span<const Var> vs) const {
  for (Var v : vs) {
    if (needs(v)) return true;
  }
  return false;
}

template <typename T>
void Graph<T>::set_back(Var out, std::function<void()> fn) {
  Node& n = nodes_[static_cast<size_t>(out.id)];
  if (n.requires_grad) n.back = std::move(fn);
}

template <typename T>
Var Graph<T>::constant(Mat value) {
  return push(std::move(value), false);
}

template <typename T>
Var Graph<T>::param(const Parameter<T>& p) {
  auto it = leaves_.find(&p);
  if (it != leaves_.end()) return Var{it->second};
  Node n;
  n.ref = &p.value;
  n.requires_grad = record_;
  nodes_.push_back(std::move(n));
  int id = static_cast<int>(nodes_.size() - 1);
  leaves_.emplace(&p, id);
  return Var{id};
}

template <typename T>
const typename Graph<T>::Mat* Graph<T>::gradient(const Parameter<T>& p) const {
  auto it = leaves_.find(&p);
  if (it == leaves_.end()) return nullptr;
  const Node& n = nodes_[static_cast<size_t>(it->second)];
  return n.has_grad ? &n.grad : nullptr;
}

template <typename T>
Var Graph<T>::matmul(Var a, Var b) {
  const Mat& A = val(a.id);
  const Mat& B = val(b.id);
  if (A.cols() != B.rows()) throw ShapeMismatch("matmul " + dims(A) + " * " + dims(B));
  Mat out(A.rows(), B.cols());
  out.noalias() = A * B;
  Var o = push(std::move(out), needs(a) || needs(b));
  set_back(o, [this, a, b, o] {
    const Mat& G = grad(o.id);
    if (needs(a)) grad(a.id).noalias() += G * val(b.id).transpose();
    if (needs(b)) grad(b.id).noalias() += val(a.id).transpose() * G;
  });
  return o;
}

template <typename T>
Var Graph<T>::affine(Var w, Var x, Var bias) {
  const Mat& W = val(w.id);
  const Mat& X = val(x.id);
  const Mat& b = val(bias.id);
  if (W.cols() != X.rows() || b.rows() != W.rows() || b.cols() != 1) {
    throw ShapeMismatch("affine " + dims(W) + " * " + dims(X) + " + " + dims(b));
  }
  Mat out(W.rows(), X.cols());
  out.noalias() = W * X;
  out.colwise() += b.col(0);
  Var o = push(std::move(out), needs(w) || needs(x) || needs(bias));
  set_back(o, [this, w, x, bias, o] {
    const Mat& G = grad(o.id);
    if (needs(w)) grad(w.id).noalias() += G * val(x.id).transpose();
    if (needs(x)) grad(x.id).noalias() += val(w.id).transpose() * G;
    if (needs(bias)) grad(bias.id).col(0) += G.rowwise().sum();
  });
  return o;
}

template <typename T>
Var Graph<T>::add(Var a, Var b) {
  const Mat& A = val(a.id);
  const Mat& B = val(b.id);
  if (A.rows() != B.rows() || A.cols() != B.cols()) {
    throw ShapeMismatch("add " + dims(A) + " + " + dims(B));
  }
  Var o = push(A + B, needs(a) || needs(b));
  set_back(o, [this, a, b, o] {
    const Mat& G = grad(o.id);
    if (needs(a)) grad(a.id) += G;
    if (needs(b)) grad(b.id) += G;
  });
  return o;
}

template <typename T>
Var Graph<T>::mul(Var a, Var b) {
  const Mat& A = val(a.id);
  const Mat& B = val(b.id);
  if (A.rows() != B.rows() || A.cols() != B.cols()) {
    throw ShapeMismatch("mul " + dims(A) + " .* " + dims(B));
  }
  Var o = push(A.cwiseProduct(B), needs(a) || needs(b));
  set_back(o, [this, a, b, o] {
    const Mat& G = grad(o.id);
    if (needs(a)) grad(a.id) += G.cwiseProduct(val(b.id));
    if (needs(b)) grad(b.id) += G.cwiseProduct(val(a.id));
  });
  return o;
}

template <typename T>
Var Graph<T>::one_minus(Var a) {
  Var o = push((T(1) - val(a.id).array()).matrix(), needs(a));
  set_back(o, [this, a, o] { grad(a.id) -= grad(o.id); });
  return o;
}

template <typename T>
Var Graph<T>::sigmoid(Var a) {
  Var o = push(val(a.id).unaryExpr([](T v) { return stable_sigmoid(v); }), needs(a));
  set_back(o, [this, a, o] {
    const Mat& Y = val(o.id);
    grad(a.id).array() += grad(o.id).array() * Y.array() * (T(1) - Y.array());
  });
  return o;
}

template <typename T>
Var Graph<T>::tanh(Var a) {
  Var o = push(val(a.id).array().tanh().matrix(), needs(a));
  set_back(o, [this, a, o] {
    const Mat& Y = val(o.id);
    grad(a.id).array() += grad(o.id).array() * (T(1) - Y.array().square());
  });
  return o;
}

template <typename T>
Var Graph<T>::mask_blend(Var fresh, Var keep, const ColumnMask& mask) {
  const Mat& F = val(fresh.id);
  const Mat& K = val(keep.id);
  if (F.rows() != K.rows() || F.cols() != K.cols() ||
      static_cast<Eigen::Index>(mask.size()) != F.cols()) {
    throw ShapeMismatch("mask_blend " + dims(F) + " / " + dims(K) + " mask " +
                        std::to_string(mask.size()));
  }
  Mat out(F.rows(), F.cols());
  for (Eigen::Index j = 0; j < F.cols(); ++j) out.col(j) = mask[j] ? F.col(j) : K.col(j);
  Var o = push(std::move(out), needs(fresh) || needs(keep));
  set_back(o, [this, fresh, keep, o, mask] {
    const Mat& G = grad(o.id);
    for (Eigen::Index j = 0; j < G.cols(); ++j) {
      if (mask[j]) {
        if (needs(fresh)) grad(fresh.id).col(j) += G.col(j);
      } else if (needs(keep)) {
        grad(keep.id).col(j) += G.col(j);
      }
    }
  });
  return o;
}

template <typename T>
Var Graph<T>::concat_rows(std::span<const Var> parts) {
  if (parts.empty()) throw ShapeMismatch("concat_rows of nothing");
  Eigen::Index cols = val(parts[0].id).cols();
  Eigen::Index rows = 0;
  for (Var p : parts) {
    if (val(p.id).cols() != cols) throw ShapeMismatch("concat_rows column mismatch");
    rows += val(p.id).rows();
  }
  Mat out(rows, cols);
  Eigen::Index r = 0;
  for (Var p : parts) {
    const Mat& P = val(p.id);
    out.middleRows(r, P.rows()) = P;
    r += P.rows();
  }
  std::vector<Var> ins(parts.begin(), parts.end());
  Var o = push(std::move(out), any_needs(parts));
  set_back(o, [this, ins, o] {
    const Mat& G = grad(o.id);
    Eigen::Index r = 0;
    for (Var p : ins) {
      Eigen::Index n = val(p.id).rows();
      if (needs(p)) grad(p.id) += G.middleRows(r, n);
      r += n;
    }
  });
  return o;
}

template <typename T>
Var Graph<T>::concat_cols(std::span<const Var> parts) {
  if (parts.empty()) throw ShapeMismatch("concat_cols of nothing");
  Eigen::Index rows = val(parts[0].id).rows();
  Eigen::Index cols = 0;
  for (Var p : parts) {
    if (val(p.id).rows() != rows) throw ShapeMismatch("concat_cols row mismatch");
    cols += val(p.id).cols();
  }
  Mat out(rows, cols);
  Eigen::Index c = 0;
  for (Var p : parts) {
    const Mat& P = val(p.id);
    out.middleCols(c, P.cols()) = P;
    c += P.cols();
  }
  std::vector<Var> ins(parts.begin(), parts.end());
  Var o = push(std::move(out), any_needs(parts));
  set_back(o, [this, ins, o] {
    const Mat& G = grad(o.id);
    Eigen::Index c = 0;
    for (Var p : ins) {
      Eigen::Index n = val(p.id).cols();
      if (needs(p)) grad(p.id) += G.middleCols(c, n);
      c += n;
    }
  });
  return o;
}

template <typename T>
Var Graph<T>::slice_cols(Var a, Eigen::Index start, Eigen::Index count) {
  const Mat& A = val(a.id);
  if (start < 0 || count < 0 || start + count > A.cols()) {
    throw ShapeMismatch("slice_cols [" + std::to_string(start) + ", +" + std::to_string(count) +
                        ") of " + dims(A));
  }
  Var o = push(A.middleCols(start, count), needs(a));
  set_back(o, [this, a, o, start, count] {
    grad(a.id).middleCols(start, count) += grad(o.id);
  });
  return o;
}

template <typename T>
Var Graph<T>::gather_cols(Var a, std::span<const int> cols) {
  const Mat& A = val(a.id);
  Mat out(A.rows(), static_cast<Eigen::Index>(cols.size()));
  for (size_t k = 0; k < cols.size(); ++k) {
    if (cols[k] >= A.cols()) {
      throw ShapeMismatch("gather_cols index " + std::to_string(cols[k]) + " of " + dims(A));
    }
    if (cols[k] < 0) {
      out.col(static_cast<Eigen::Index>(k)).setZero();
    } else {
      out.col(static_cast<Eigen::Index>(k)) = A.col(cols[k]);
    }
  }
  std::vector<int> idx(cols.begin(), cols.end());
  Var o = push(std::move(out), needs(a));
  set_back(o, [this, a, o, idx] {
    const Mat& G = grad(o.id);
    Mat& D = grad(a.id);
    for (size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] >= 0) D.col(idx[k]) += G.col(static_cast<Eigen::Index>(k));
    }
  });
  return o;
}

template <typename T>
Var Graph<T>::lookup(Var table, std::span<const int> ids) {
  const Mat& E = val(table.id);
  Mat out(E.cols(), static_cast<Eigen::Index>(ids.size()));
  for (size_t k = 0; k < ids.size(); ++k) {
    if (ids[k] >= E.rows()) {
      throw ShapeMismatch("lookup id " + std::to_string(ids[k]) + " in a table of " +
                          std::to_string(E.rows()) + " rows");
    }
    if (ids[k] < 0) {
      out.col(static_cast<Eigen::Index>(k)).setZero();
    } else {
      out.col(static_cast<Eigen::Index>(k)) = E.row(ids[k]).transpose();
    }
  }
  std::vector<int> idx(ids.begin(), ids.end());
  Var o = push(std::move(out), needs(table));
  set_back(o, [this, table, o, idx] {
    const Mat& G = grad(o.id);
    Mat& D = grad(table.id);
    for (size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] >= 0) D.row(idx[k]) += G.col(static_cast<Eigen::Index>(k)).transpose();
    }
  });
  return o;
}

template <typename T>
Var Graph<T>::bce_with_logits(Var logits, const Mat& targets, const Mat& weights) {
  const Mat& X = val(logits.id);
  if (X.rows() != targets.rows() || X.cols() != targets.cols() ||
      X.rows() != weights.rows() || X.cols() != weights.cols()) {
    throw LengthMismatch("bce logits " + dims(X) + " targets " + dims(targets) + " weights " +
                         dims(weights));
  }
  T total = 0;
  for (Eigen::Index i = 0; i < X.size(); ++i) {
    T x = X.data()[i];
    total += weights.data()[i] * (softplus(x) - targets.data()[i] * x);
  }
  Mat out(1, 1);
  out(0, 0) = total;
  Var o = push(std::move(out), needs(logits));
  set_back(o, [this, logits, o, targets, weights] {
    T g = grad(o.id)(0, 0);
    const Mat& X = val(logits.id);
    Mat& D = grad(logits.id);
    for (Eigen::Index i = 0; i < X.size(); ++i) {
      D.data()[i] += g * weights.data()[i] * (stable_sigmoid(X.data()[i]) - targets.data()[i]);
    }
  });
  return o;
}

template <typename T>
Var Graph<T>::bce_probs(Var probs, const Mat& targets, const Mat& weights, T eps) {
  const Mat& P = val(probs.id);
  if (P.rows() != targets.rows() || P.cols() != targets.cols() ||
      P.rows() != weights.rows() || P.cols() != weights.cols()) {
    throw LengthMismatch("bce probs " + dims(P) + " targets " + dims(targets) + " weights " +
                         dims(weights));
  }
  T total = 0;
  for (Eigen::Index i = 0; i < P.size(); ++i) {
    T p = std::clamp(P.data()[i], eps, T(1) - eps);
    T y = targets.data()[i];
    total -= weights.data()[i] * (y * std::log(p) + (T(1) - y) * std::log(T(1) - p));
  }
  Mat out(1, 1);
  out(0, 0) = total;
  Var o = push(std::move(out), needs(probs));
  set_back(o, [this, probs, o, targets, weights, eps] {
    T g = grad(o.id)(0, 0);
    const Mat& P = val(probs.id);
    Mat& D = grad(probs.id);
    for (Eigen::Index i = 0; i < P.size(); ++i) {
      T p = P.data()[i];
      if (p < eps || p > T(1) - eps) continue;
      T y = targets.data()[i];
      D.data()[i] += g * weights.data()[i] * (-y / p + (T(1) - y) / (T(1) - p));
    }
  });
  return o;
}

template <typename T>
void Graph<T>::backward(Var root) {
  if (!record_) throw Error("backward() on a graph built without gradient recording");
  const Mat& R = val(root.id);
  if (R.rows() != 1 || R.cols() != 1) throw ShapeMismatch("backward root must be 1x1");
  grad(root.id)(0, 0) += T(1);
  for (int id = root.id; id >= 0; --id) {
    Node& n = nodes_[static_cast<size_t>(id)];
    if (n.has_grad && n.back) n.back();
  }
}

template class Graph<float>;
template class Graph<double>;

}  // namespace scopeit::nn
