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

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "scopeit/common/error.h"
#include "scopeit/nn/adam.h"
#include "scopeit/nn/container.h"
#include "scopeit/nn/gradcheck.h"
#include "scopeit/nn/graph.h"
#include "scopeit/nn/gru.h"
#include "scopeit/nn/loss.h"
#include "scopeit/nn/schedule.h"

namespace nn = scopeit::nn;
using Mat = nn::Matrix<double>;
using Vec = nn::Vector<double>;

namespace {

double sig(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// The four gate formulas written out element by element.
Vec reference_cell(const Vec& x, const Vec& h, const nn::GruLayerParams<double>& p) {
  const size_t H = p.hidden_size;
  Vec out(static_cast<Eigen::Index>(H));
  for (size_t i = 0; i < H; ++i) {
    auto row = [&](const nn::Parameter<double>& w, const Vec& v) {
      double s = 0;
      for (Eigen::Index k = 0; k < v.size(); ++k) s += w.value(static_cast<Eigen::Index>(i), k) * v(k);
      return s;
    };
    auto b = [&](const nn::Parameter<double>& bias) { return bias.value(static_cast<Eigen::Index>(i), 0); };
    double r = sig(row(p.w_ir, x) + b(p.b_ir) + row(p.w_hr, h) + b(p.b_hr));
    double z = sig(row(p.w_iz, x) + b(p.b_iz) + row(p.w_hz, h) + b(p.b_hz));
    double n = std::tanh(row(p.w_in, x) + b(p.b_in) + r * (row(p.w_hn, h) + b(p.b_hn)));
    out(static_cast<Eigen::Index>(i)) = (1 - z) * n + z * h(static_cast<Eigen::Index>(i));
  }
  return out;
}

void randomize(nn::ParameterRefs<double> params, std::mt19937_64& rng, double bound = 0.5) {
  for (nn::Parameter<double>* p : params) nn::init_uniform(*p, bound, rng);
}

Vec random_vec(std::mt19937_64& rng, size_t n) {
  std::uniform_real_distribution<double> d(-1, 1);
  Vec v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = d(rng);
  return v;
}

nn::BiGruParams<double> random_bigru(std::mt19937_64& rng, size_t in, size_t h, size_t layers) {
  auto p = nn::BiGruParams<double>::create("enc", in, h, layers);
  nn::ParameterRefs<double> refs;
  p.collect(refs);
  randomize(refs, rng);
  return p;
}

}  // namespace

TEST_CASE("gru cell with zero weights halves the state") {
  auto p = nn::GruLayerParams<double>::create("c", 2, 1);
  Vec x(2);
  x << 0.3, -0.7;
  Vec h(1);
  h << 0.8;
  CHECK(nn::gru_cell(x, h, p)(0) == doctest::Approx(0.4).epsilon(1e-15));
  Vec zero = Vec::Zero(1);
  CHECK(nn::gru_cell(x, zero, p)(0) == 0.0);
}

TEST_CASE("gru cell matches the straight-line formulas") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    auto p = nn::GruLayerParams<double>::create("c", 3, 3);
    nn::ParameterRefs<double> refs;
    p.collect(refs);
    randomize(refs, rng, 1.0);
    Vec x = random_vec(rng, 3);
    Vec h = random_vec(rng, 3);
    CHECK((nn::gru_cell(x, h, p) - reference_cell(x, h, p)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("gru cell rejects inconsistent shapes") {
  auto p = nn::GruLayerParams<double>::create("c", 3, 2);
  CHECK_THROWS_AS(nn::gru_cell<double>(Vec::Zero(2), Vec::Zero(2), p), scopeit::ShapeMismatch);
  CHECK_THROWS_AS(nn::gru_cell<double>(Vec::Zero(3), Vec::Zero(3), p), scopeit::ShapeMismatch);
}

TEST_CASE("single-step bigru equals one cell step per direction") {
  std::mt19937_64 rng(4);
  auto p = random_bigru(rng, 3, 2, 1);
  Vec x = random_vec(rng, 3);
  auto enc = nn::bigru_encode<double>({x}, p);
  Vec zero = Vec::Zero(2);
  CHECK((enc.final_forward - nn::gru_cell(x, zero, p.forward[0])).norm() < 1e-14);
  CHECK((enc.final_backward - nn::gru_cell(x, zero, p.backward[0])).norm() < 1e-14);
}

TEST_CASE("bigru output width is twice the hidden size") {
  std::mt19937_64 rng(5);
  for (size_t layers = 1; layers <= 3; ++layers) {
    for (size_t len : {1u, 2u, 7u}) {
      auto p = random_bigru(rng, 4, 3, layers);
      std::vector<Vec> seq;
      for (size_t t = 0; t < len; ++t) seq.push_back(random_vec(rng, 4));
      auto enc = nn::bigru_encode(seq, p);
      REQUIRE(enc.outputs.size() == len);
      for (const Vec& o : enc.outputs) CHECK(o.size() == 6);
    }
  }
}

TEST_CASE("bigru stacks the concatenated outputs of the layer below") {
  std::mt19937_64 rng(6);
  auto p = random_bigru(rng, 2, 2, 2);
  std::vector<Vec> seq = {random_vec(rng, 2), random_vec(rng, 2), random_vec(rng, 2)};
  // Layer by layer with cells composed by hand.
  std::vector<Vec> in = seq;
  std::vector<Vec> fwd(3), bwd(3);
  for (size_t k = 0; k < 2; ++k) {
    Vec h = Vec::Zero(2);
    for (size_t t = 0; t < 3; ++t) fwd[t] = h = nn::gru_cell(in[t], h, p.forward[k]);
    h = Vec::Zero(2);
    for (size_t t = 3; t-- > 0;) bwd[t] = h = nn::gru_cell(in[t], h, p.backward[k]);
    for (size_t t = 0; t < 3; ++t) {
      Vec c(4);
      c << fwd[t], bwd[t];
      in[t] = c;
    }
  }
  auto enc = nn::bigru_encode(seq, p);
  for (size_t t = 0; t < 3; ++t) CHECK((enc.outputs[t] - in[t]).norm() < 1e-14);
  CHECK((enc.final_forward - fwd[2]).norm() < 1e-14);
  CHECK((enc.final_backward - bwd[0]).norm() < 1e-14);
}

TEST_CASE("reversing the input with swapped directions reverses the outputs") {
  std::mt19937_64 rng(7);
  for (size_t layers = 1; layers <= 2; ++layers) {
    auto p = random_bigru(rng, 3, 2, layers);
    auto swapped = p;
    std::swap(swapped.forward, swapped.backward);
    // Upper layers of the mirrored run see [b; f] instead of [f; b], so
    // their input columns swap halves too.
    for (size_t k = 1; k < layers; ++k) {
      for (auto* dir : {&swapped.forward[k], &swapped.backward[k]}) {
        for (auto* w : {&dir->w_ir, &dir->w_iz, &dir->w_in}) {
          Mat v = w->value;
          w->value.leftCols(2) = v.rightCols(2);
          w->value.rightCols(2) = v.leftCols(2);
        }
      }
    }
    std::vector<Vec> seq = {random_vec(rng, 3), random_vec(rng, 3), random_vec(rng, 3),
                            random_vec(rng, 3)};
    std::vector<Vec> rev(seq.rbegin(), seq.rend());
    auto a = nn::bigru_encode(seq, p);
    auto b = nn::bigru_encode(rev, swapped);
    for (size_t t = 0; t < 4; ++t) {
      const Vec& o = a.outputs[t];
      const Vec& r = b.outputs[3 - t];
      // [f; b] of the original equals [b; f] of the mirrored run.
      CHECK((o.head(2) - r.tail(2)).norm() < 1e-12);
      CHECK((o.tail(2) - r.head(2)).norm() < 1e-12);
    }
  }
}

TEST_CASE("bigru rejects empty sequences") {
  std::mt19937_64 rng(8);
  auto p = random_bigru(rng, 2, 2, 1);
  CHECK_THROWS_AS(nn::bigru_encode<double>({}, p), scopeit::EmptySequence);
  CHECK_THROWS_AS(nn::BiGruParams<double>::create("x", 2, 2, 0), scopeit::ShapeMismatch);
}

TEST_CASE("padded batch matches per-sequence encoding") {
  std::mt19937_64 rng(9);
  auto p = random_bigru(rng, 3, 2, 2);
  std::vector<size_t> lengths = {4, 1, 3};
  const size_t T = 4, B = 3;
  Mat in = Mat::Zero(3, T * B);
  std::vector<std::vector<Vec>> seqs(B);
  for (size_t b = 0; b < B; ++b) {
    for (size_t t = 0; t < lengths[b]; ++t) {
      Vec x = random_vec(rng, 3);
      seqs[b].push_back(x);
      in.col(static_cast<Eigen::Index>(t * B + b)) = x;
    }
  }
  // Garbage in padded columns must not leak.
  in.col(1 * B + 1).setConstant(9);
  nn::Graph<double> g(false);
  auto s = nn::bigru_forward(g, p, g.constant(in), T, lengths);
  const Mat& out = g.value(nn::bigru_outputs(g, s));
  for (size_t b = 0; b < B; ++b) {
    auto enc = nn::bigru_encode(seqs[b], p);
    for (size_t t = 0; t < lengths[b]; ++t) {
      CHECK((out.col(static_cast<Eigen::Index>(t * B + b)) - enc.outputs[t]).norm() < 1e-13);
    }
    CHECK((g.value(s.final_forward).col(static_cast<Eigen::Index>(b)) - enc.final_forward).norm() < 1e-13);
    CHECK((g.value(s.final_backward).col(static_cast<Eigen::Index>(b)) - enc.final_backward).norm() < 1e-13);
  }
}

TEST_CASE("bce analytic values") {
  const double eps = nn::kBceEpsilon;
  CHECK(std::abs(nn::bce_loss(std::vector<double>{1 - eps}, std::vector<int>{1})) < 1e-6);
  CHECK(std::abs(nn::bce_loss(std::vector<double>{0.5, 0.5}, std::vector<int>{1, 0}) - 2 * std::log(2.0)) < 1e-9);
  CHECK(std::abs(nn::bce_loss(std::vector<double>{0.25}, std::vector<int>{1}) - std::log(4.0)) < 1e-9);
  CHECK_THROWS_AS(nn::bce_loss(std::vector<double>{0.5}, std::vector<int>{1, 0}), scopeit::LengthMismatch);
}

TEST_CASE("bce is non-negative and clamps extreme probabilities") {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 1000; ++i) {
    double p = u(rng);
    int y = static_cast<int>(rng() % 2);
    CHECK(nn::bce_loss(std::vector<double>{p}, std::vector<int>{y}) >= 0);
  }
  double at_zero = nn::bce_loss(std::vector<double>{0.0}, std::vector<int>{1});
  CHECK(std::isfinite(at_zero));
  CHECK(at_zero == doctest::Approx(-std::log(nn::kBceEpsilon)));
}

TEST_CASE("backward through the probability and logit losses") {
  Mat one = Mat::Ones(1, 1);
  {
    nn::Graph<double> g;
    nn::Parameter<double> p = nn::Parameter<double>::matrix("p", 1, 1);
    p.value(0, 0) = 0.5;
    nn::Var loss = g.bce_probs(g.param(p), one, one, nn::kBceEpsilon);
    g.backward(loss);
    CHECK((*g.gradient(p))(0, 0) == doctest::Approx(-2.0).epsilon(1e-12));
  }
  {
    nn::Graph<double> g;
    nn::Parameter<double> x = nn::Parameter<double>::matrix("x", 1, 1);
    nn::Var loss = g.bce_with_logits(g.param(x), one, one);
    g.backward(loss);
    CHECK((*g.gradient(x))(0, 0) == doctest::Approx(-0.5).epsilon(1e-12));
  }
  {
    // Through an explicit sigmoid: dL/dp * dp/dx = -2 * 0.25.
    nn::Graph<double> g;
    nn::Parameter<double> x = nn::Parameter<double>::matrix("x", 1, 1);
    nn::Var loss = g.bce_probs(g.sigmoid(g.param(x)), one, one, nn::kBceEpsilon);
    g.backward(loss);
    CHECK((*g.gradient(x))(0, 0) == doctest::Approx(-0.5).epsilon(1e-12));
  }
}

TEST_CASE("every graph op passes the finite-difference check") {
  std::mt19937_64 rng(15);
  auto a = nn::Parameter<double>::matrix("a", 3, 4);
  auto b = nn::Parameter<double>::matrix("b", 3, 4);
  auto w = nn::Parameter<double>::matrix("w", 2, 3);
  auto bias = nn::Parameter<double>::vector("bias", 2);
  auto table = nn::Parameter<double>::matrix("table", 5, 3);
  nn::ParameterRefs<double> refs = {&a, &b, &w, &bias, &table};
  randomize(refs, rng, 1.0);
  Mat targets(1, 6);
  targets << 1, 0, 1, 1, 0, 0;
  Mat weights = Mat::Constant(1, 6, 0.5);
  Mat mix = Mat::Random(3, 6);
  auto build = [&](nn::Graph<double>& g) {
    nn::Var A = g.param(a), B = g.param(b);
    nn::Var m = g.mask_blend(g.tanh(A), g.sigmoid(B), {1, 0, 1, 0});
    nn::Var c = g.add(g.mul(m, g.one_minus(B)), A);
    nn::Var parts[2] = {g.slice_cols(c, 1, 2), g.gather_cols(c, std::vector<int>{3, -1, 0, 3})};
    nn::Var wide = g.concat_cols(parts);                      // 3 x 6
    nn::Var looked = g.lookup(g.param(table), std::vector<int>{4, 0, -1, 4, 2, 1});  // 3 x 6
    nn::Var rows[2] = {wide, looked};
    nn::Var tall = g.concat_rows(rows);                       // 6 x 6
    nn::Var top = g.slice_cols(tall, 0, 6);
    nn::Var logits = g.affine(g.param(w), g.matmul(g.constant(mix), top), g.param(bias));
    nn::Var one_row = g.slice_cols(g.concat_rows(std::vector<nn::Var>{logits}), 0, 6);
    // Reduce the 2 x 6 logits to 1 x 6 through a fixed matrix.
    Mat sum_rows = Mat::Ones(1, 2);
    return g.bce_with_logits(g.matmul(g.constant(sum_rows), one_row), targets, weights);
  };
  for (const auto& e : nn::check_gradients(refs, build)) {
    INFO(e.name);
    CHECK(e.relative_error < 1e-7);
    CHECK(e.analytic_norm > 0);
  }
}

TEST_CASE("adam first step moves by the learning rate against the gradient") {
  auto p = nn::Parameter<double>::matrix("w", 1, 2);
  p.value << 1.0, -1.0;
  nn::ParameterRefs<double> refs = {&p};
  auto state = nn::OptimizerState<double>::create(refs, 0.01);
  p.grad = Mat(1, 2);
  p.grad << 0.3, -2.0;
  nn::adam_step(refs, state);
  CHECK(std::abs(p.value(0, 0) - (1.0 - 0.01)) <= 0.01 * 1e-8 / 0.3 + 1e-15);
  CHECK(std::abs(p.value(0, 1) - (-1.0 + 0.01)) <= 0.01 * 1e-8 / 2.0 + 1e-15);
  CHECK(state.step == 1);
}

TEST_CASE("adam leaves parameters alone on zero gradient") {
  auto p = nn::Parameter<double>::matrix("w", 2, 2);
  p.value.setConstant(0.7);
  nn::ParameterRefs<double> refs = {&p};
  auto state = nn::OptimizerState<double>::create(refs, 0.1);
  p.zero_grad();
  nn::adam_step(refs, state);
  nn::adam_step(refs, state);
  CHECK(p.value == Mat::Constant(2, 2, 0.7));
  CHECK(state.step == 2);
}

TEST_CASE("adam minimizes a quadratic like the reference rule") {
  auto p = nn::Parameter<double>::matrix("w", 1, 1);
  p.value(0, 0) = 1.0;
  nn::ParameterRefs<double> refs = {&p};
  auto state = nn::OptimizerState<double>::create(refs, 0.1);
  double w = 1.0, m = 0, v = 0;
  for (int t = 1; t <= 100; ++t) {
    p.grad = Mat::Constant(1, 1, 2 * p.value(0, 0));
    nn::adam_step(refs, state);
    double g = 2 * w;
    m = 0.9 * m + 0.1 * g;
    v = 0.999 * v + 0.001 * g * g;
    double mh = m / (1 - std::pow(0.9, t));
    double vh = v / (1 - std::pow(0.999, t));
    w -= 0.1 * mh / (std::sqrt(vh) + 1e-8);
    CHECK(p.value(0, 0) == doctest::Approx(w).epsilon(1e-12));
  }
  CHECK(std::abs(p.value(0, 0)) < 0.1);
}

TEST_CASE("adam rejects mismatched shapes") {
  auto p = nn::Parameter<double>::matrix("w", 2, 2);
  nn::ParameterRefs<double> refs = {&p};
  auto state = nn::OptimizerState<double>::create(refs, 0.1);
  p.grad = Mat::Zero(1, 2);
  CHECK_THROWS_AS(nn::adam_step(refs, state), scopeit::ShapeMismatch);
  nn::OptimizerState<double> empty;
  p.zero_grad();
  CHECK_THROWS_AS(nn::adam_step(refs, empty), scopeit::ShapeMismatch);
}

TEST_CASE("schedule keeps lr while improving") {
  nn::LrSchedule s;
  s.lr = 1e-3;
  for (double loss : {1.0, 0.9, 0.8}) {
    auto d = nn::schedule_epoch(loss, s);
    CHECK(d.lr == 1e-3);
    CHECK_FALSE(d.stop);
    CHECK(d.improved);
  }
}

TEST_CASE("schedule halves after five flat epochs and stops after eight") {
  nn::LrSchedule s;
  s.lr = 1.0;
  std::vector<nn::ScheduleDecision> d;
  for (int e = 1; e <= 9; ++e) d.push_back(nn::schedule_epoch(1.0, s));
  for (int e = 1; e <= 5; ++e) CHECK(d[e - 1].lr == 1.0);
  CHECK(d[5].lr == 0.5);
  CHECK(d[5].annealed);
  for (int e = 1; e <= 8; ++e) CHECK_FALSE(d[e - 1].stop);
  CHECK(d[8].stop);
}

TEST_CASE("schedule tolerance and monotone lr") {
  nn::LrSchedule s;
  s.lr = 1.0;
  nn::schedule_epoch(1.0, s);
  CHECK_FALSE(nn::schedule_epoch(1.0 - 5e-7, s).improved);
  CHECK(nn::schedule_epoch(1.0 - 2e-6, s).improved);
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  double prev = s.lr;
  for (int i = 0; i < 300; ++i) {
    double lr = nn::schedule_epoch(u(rng), s).lr;
    CHECK(lr <= prev);
    prev = lr;
  }
}

TEST_CASE("container round trip is byte exact") {
  nn::Container c;
  c.header = R"({"format_version":1,"precision":"f32"})";
  c.tensors.push_back({"a", {2, 3}, {1, 2, 3, 4, 5, 6}});
  c.tensors.push_back({"b", {1}, {-0.0f}});
  c.tensors.push_back({"c", {2, 0}, {}});
  std::string bytes = nn::serialize_container(c);
  nn::Container back = nn::parse_container(bytes);
  CHECK(nn::serialize_container(back) == bytes);
  CHECK(back.header_json()["precision"] == "f32");
  CHECK(back.find("a")->shape == std::vector<uint32_t>{2, 3});
  CHECK_THROWS_AS(nn::parse_container("XXXX"), scopeit::FormatError);
  CHECK_THROWS_AS(nn::parse_container(bytes.substr(0, bytes.size() - 2)), scopeit::FormatError);
  CHECK_THROWS_AS(nn::parse_container(bytes + "z"), scopeit::FormatError);
}

TEST_CASE("tensor export is row-major and import checks names and shapes") {
  auto p = nn::Parameter<double>::matrix("m", 2, 2);
  p.value << 1, 2, 3, 4;
  auto t = nn::export_tensors<double>({&p});
  CHECK(t[0].data == std::vector<float>{1, 2, 3, 4});
  auto q = nn::Parameter<double>::matrix("m", 2, 2);
  nn::import_tensors<double>(t, {&q});
  CHECK(q.value == p.value);
  auto wrong = nn::Parameter<double>::matrix("m", 1, 4);
  CHECK_THROWS_AS(nn::import_tensors<double>(t, {&wrong}), scopeit::FormatError);
  auto other = nn::Parameter<double>::matrix("n", 2, 2);
  CHECK_THROWS_AS(nn::import_tensors<double>(t, {&other}), scopeit::FormatError);
}
