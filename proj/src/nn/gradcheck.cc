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

#include "scopeit/nn/gradcheck.h"

#include <algorithm>
#include <cmath>

namespace scopeit::nn {
namespace {

double evaluate(const LossBuilder& build) {
  Graph<double> g(false);
  return g.scalar(build(g));
}

}  // namespace

std::vector<TensorGradError> check_gradients(const ParameterRefs<double>& params,
                                             const LossBuilder& build, double step) {
  std::vector<Matrix<double>> analytic;
  {
    Graph<double> g(true);
    Var loss = build(g);
    g.backward(loss);
    for (const Parameter<double>* p : params) {
      const Matrix<double>* grad = g.gradient(*p);
      analytic.push_back(grad ? *grad : Matrix<double>::Zero(p->value.rows(), p->value.cols()));
    }
  }
  std::vector<TensorGradError> out;
  for (size_t i = 0; i < params.size(); ++i) {
    Parameter<double>& p = *params[i];
    Matrix<double> numeric(p.value.rows(), p.value.cols());
    for (Eigen::Index k = 0; k < p.value.size(); ++k) {
      double saved = p.value.data()[k];
      p.value.data()[k] = saved + step;
      double up = evaluate(build);
      p.value.data()[k] = saved - step;
      double down = evaluate(build);
      p.value.data()[k] = saved;
      numeric.data()[k] = (up - down) / (2 * step);
    }
    TensorGradError e;
    e.name = p.name;
    e.size = p.size();
    e.analytic_norm = analytic[i].norm();
    e.numeric_norm = numeric.norm();
    double denom = std::max(e.analytic_norm, e.numeric_norm);
    e.relative_error = denom == 0 ? 0 : (analytic[i] - numeric).norm() / denom;
    out.push_back(e);
  }
  return out;
}

}  // namespace scopeit::nn
