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

#include "scopeit/nn/adam.h"

#include <cmath>
#include <string>

#include "scopeit/common/error.h"

namespace scopeit::nn {

template <typename T>
OptimizerState<T> OptimizerState<T>::create(const ParameterRefs<T>& params, double lr) {
  OptimizerState s;
  s.lr = lr;
  for (const Parameter<T>* p : params) {
    s.m.push_back(Matrix<T>::Zero(p->value.rows(), p->value.cols()));
    s.v.push_back(Matrix<T>::Zero(p->value.rows(), p->value.cols()));
  }
  return s;
}

template <typename T>
void adam_step(const ParameterRefs<T>& params, OptimizerState<T>& state, const AdamConfig& config) {
  if (state.m.size() != params.size() || state.v.size() != params.size()) {
    throw ShapeMismatch("optimizer state holds " + std::to_string(state.m.size()) +
                        " moments for " + std::to_string(params.size()) + " parameters");
  }
  for (size_t i = 0; i < params.size(); ++i) {
    const Parameter<T>& p = *params[i];
    auto same = [&p](const Matrix<T>& x) {
      return x.rows() == p.value.rows() && x.cols() == p.value.cols();
    };
    if (!same(p.grad) || !same(state.m[i]) || !same(state.v[i])) {
      throw ShapeMismatch("adam_step: gradient or moment shape differs for " + p.name);
    }
  }
  ++state.step;
  const double c1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.step));
  const T b1 = static_cast<T>(config.beta1);
  const T b2 = static_cast<T>(config.beta2);
  for (size_t i = 0; i < params.size(); ++i) {
    Parameter<T>& p = *params[i];
    auto m = state.m[i].array();
    auto v = state.v[i].array();
    auto g = p.grad.array();
    m = b1 * m + (T(1) - b1) * g;
    v = b2 * v + (T(1) - b2) * g.square();
    auto w = p.value.array();
    for (Eigen::Index k = 0; k < w.size(); ++k) {
      double m_hat = static_cast<double>(m.data()[k]) / c1;
      double v_hat = static_cast<double>(v.data()[k]) / c2;
      w.data()[k] -= static_cast<T>(state.lr * m_hat / (std::sqrt(v_hat) + config.epsilon));
    }
  }
}

template struct OptimizerState<float>;
template struct OptimizerState<double>;
template void adam_step<float>(const ParameterRefs<float>&, OptimizerState<float>&,
                               const AdamConfig&);
template void adam_step<double>(const ParameterRefs<double>&, OptimizerState<double>&,
                                const AdamConfig&);

}  // namespace scopeit::nn
