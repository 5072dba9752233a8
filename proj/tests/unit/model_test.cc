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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "model_fixtures.h"
#include "scopeit/common/error.h"
#include "scopeit/common/hash.h"
#include "scopeit/model/forward.h"
#include "scopeit/model/model.h"
#include "scopeit/model/scoring.h"
#include "scopeit/model/train.h"
#include "scopeit/nn/gradcheck.h"
#include "scopeit/nn/gru.h"

namespace md = scopeit::model;
namespace nn = scopeit::nn;
namespace tp = scopeit::textprep;
using scopeit::testing::random_example;
using scopeit::testing::randomize_params;
using Mat = nn::Matrix<double>;
using Vec = nn::Vector<double>;

namespace {

md::ModelConfig tiny(size_t vocab = 12, size_t e = 4, size_t h = 3) {
  md::ModelConfig c;
  c.vocab_size = vocab;
  c.embedding_dim = e;
  c.intra_hidden = h;
  c.inter_hidden = h;
  return c;
}

// Runs a stacked BiGRU by composing cells, returning per-position outputs.
std::vector<Vec> compose_bigru(const std::vector<Vec>& seq, const nn::BiGruParams<double>& p) {
  std::vector<Vec> in = seq;
  for (size_t k = 0; k < p.layers(); ++k) {
    size_t H = p.hidden_size, T = in.size();
    std::vector<Vec> f(T), b(T);
    Vec h = Vec::Zero(static_cast<Eigen::Index>(H));
    for (size_t t = 0; t < T; ++t) f[t] = h = nn::gru_cell(in[t], h, p.forward[k]);
    h = Vec::Zero(static_cast<Eigen::Index>(H));
    for (size_t t = T; t-- > 0;) b[t] = h = nn::gru_cell(in[t], h, p.backward[k]);
    for (size_t t = 0; t < T; ++t) {
      Vec c(static_cast<Eigen::Index>(2 * H));
      c << f[t], b[t];
      in[t] = c;
    }
  }
  return in;
}

Vec compose_sentence(const Mat& tokens, const nn::BiGruParams<double>& p) {
  std::vector<Vec> seq;
  for (Eigen::Index t = 0; t < tokens.cols(); ++t) seq.push_back(tokens.col(t));
  std::vector<Vec> out = compose_bigru(seq, p);
  Eigen::Index H = static_cast<Eigen::Index>(p.hidden_size);
  Vec e(2 * H);
  e << out.back().head(H), out.front().tail(H);
  return e;
}

std::vector<double> flat_scores(const tp::TokenizedDocument& doc, const md::ModelConfig& c,
                                const md::ScopeItParams<double>& p) {
  std::vector<Vec> es;
  for (size_t i = 0; i < doc.size(); ++i) {
    Mat tokens = md::embed_sentence<double>(doc.doc_id, i, doc.sentence_tokens[i], c, p, nullptr);
    es.push_back(compose_sentence(tokens, *p.intra));
  }
  std::vector<Vec> f = c.use_inter_aggregator ? compose_bigru(es, *p.inter) : es;
  std::vector<double> out;
  for (const Vec& v : f) {
    double logit = (p.head_w.value * v)(0, 0) + p.head_b.value(0, 0);
    out.push_back(1.0 / (1.0 + std::exp(-logit)));
  }
  return out;
}

}  // namespace

TEST_CASE("trainable embedding rows and precomputed vectors") {
  md::ModelConfig c = tiny();
  auto p = md::ScopeItParams<double>::initialize(c);
  std::vector<int> toks = {5, 7};
  Mat e = md::embed_sentence<double>("d", 0, toks, c, p, nullptr);
  CHECK(e.col(0) == p.embedding->value.row(5).transpose());
  CHECK(e.col(1) == p.embedding->value.row(7).transpose());

  md::ModelConfig pc = c;
  pc.embedding = md::EmbeddingKind::kPrecomputed;
  auto pp = md::ScopeItParams<double>::initialize(pc);
  md::EmbeddingStore store(4, 0);
  md::SentenceVectors sv;
  sv.token_count = 3;
  for (int i = 0; i < 12; ++i) sv.tokens.push_back(0.25f * static_cast<float>(i));
  store.add_document("d", {sv});
  std::vector<int> three = {1, 2, 3};
  Mat v = md::embed_sentence<double>("d", 0, three, pc, pp, &store);
  for (Eigen::Index t = 0; t < 3; ++t) {
    for (Eigen::Index k = 0; k < 4; ++k) CHECK(v(k, t) == 0.25 * static_cast<double>(t * 4 + k));
  }
  std::vector<int> four = {1, 2, 3, 4};
  CHECK_THROWS_AS(md::embed_sentence<double>("d", 0, four, pc, pp, &store), scopeit::TokenCountMismatch);
  CHECK_THROWS_AS(md::embed_sentence<double>("x", 0, three, pc, pp, &store), scopeit::MissingEmbedding);
  CHECK_THROWS_AS(md::embed_sentence<double>("d", 1, three, pc, pp, &store), scopeit::MissingEmbedding);
  CHECK_THROWS_AS(md::embed_sentence<double>("d", 0, {}, pc, pp, &store), scopeit::EmptySentence);
}

TEST_CASE("sentence embedding width and single-token case") {
  md::ModelConfig c;
  c.vocab_size = 50;
  auto p = md::ScopeItParams<double>::initialize(c);
  std::vector<int> toks = {4, 9, 11, 2, 3};
  for (size_t len = 1; len <= toks.size(); ++len) {
    Mat x = md::embed_sentence<double>("d", 0, std::span(toks).first(len), c, p, nullptr);
    CHECK(md::encode_sentence(x, p).size() == 256);
  }
  md::ModelConfig one = tiny();
  one.intra_layers = 1;
  auto q = md::ScopeItParams<double>::initialize(one);
  Mat x = md::embed_sentence<double>("d", 0, std::vector<int>{3}, one, q, nullptr);
  Vec e = md::encode_sentence(x, q);
  Vec zero = Vec::Zero(3);
  Vec expect(6);
  expect << nn::gru_cell<double>(x.col(0), zero, q.intra->forward[0]),
      nn::gru_cell<double>(x.col(0), zero, q.intra->backward[0]);
  CHECK((e - expect).norm() < 1e-14);
  CHECK_THROWS_AS(md::encode_sentence(Mat(4, 0), q), scopeit::EmptySentence);
}

TEST_CASE("sentence encoder matches hand-composed cells") {
  std::mt19937_64 rng(21);
  md::ModelConfig c = tiny(12, 5, 4);
  auto p = md::ScopeItParams<double>::initialize(c);
  randomize_params(p, rng);
  Mat x = Mat::Random(5, 3);
  CHECK((md::encode_sentence(x, p) - compose_sentence(x, *p.intra)).norm() < 1e-12);
}

TEST_CASE("document scores match a flat re-implementation, with and without inter encoder") {
  std::mt19937_64 rng(22);
  for (bool inter : {true, false}) {
    md::ModelConfig c = tiny(12, 4, 3);
    c.use_inter_aggregator = inter;
    auto p = md::ScopeItParams<double>::initialize(c);
    randomize_params(p, rng);
    for (int trial = 0; trial < 5; ++trial) {
      md::Example e = random_example(rng, "d", 12, 5, 6);
      md::RelevanceScores s = md::score_document(e.doc, c, p, nullptr);
      std::vector<double> ref = flat_scores(e.doc, c, p);
      REQUIRE(s.size() == ref.size());
      for (size_t i = 0; i < ref.size(); ++i) CHECK(s.scores[i] == doctest::Approx(ref[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("single-sentence document through the inter encoder") {
  std::mt19937_64 rng(23);
  md::ModelConfig c = tiny();
  c.inter_layers = 1;
  auto p = md::ScopeItParams<double>::initialize(c);
  randomize_params(p, rng);
  md::Example ex = random_example(rng, "d", 12, 1, 4);
  Mat x = md::embed_sentence<double>("d", 0, ex.doc.sentence_tokens[0], c, p, nullptr);
  Vec e = md::encode_sentence(x, p);
  Vec zero = Vec::Zero(3);
  Vec f(6);
  f << nn::gru_cell<double>(e, zero, p.inter->forward[0]), nn::gru_cell<double>(e, zero, p.inter->backward[0]);
  md::RelevanceScores s = md::score_document(ex.doc, c, p, nullptr, {true, md::ProbeLayer::kContextual});
  double logit = (p.head_w.value * f)(0, 0) + p.head_b.value(0, 0);
  CHECK(s.scores[0] == doctest::Approx(1 / (1 + std::exp(-logit))).epsilon(1e-12));
  for (Eigen::Index k = 0; k < 6; ++k) CHECK(s.embeddings[0][static_cast<size_t>(k)] == doctest::Approx(f(k)).epsilon(1e-6));
}

TEST_CASE("zero head gives one half everywhere") {
  std::mt19937_64 rng(24);
  md::ModelConfig c = tiny();
  auto p = md::ScopeItParams<float>::initialize(c);
  p.head_w.value.setZero();
  p.head_b.value.setZero();
  md::Example ex = random_example(rng, "d", 12, 4, 5);
  for (double s : md::score_document(ex.doc, c, p, nullptr).scores) CHECK(s == 0.5);
}

TEST_CASE("permuting sentences: context matters only with the inter encoder") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 10; ++trial) {
    md::ModelConfig c = tiny();
    auto full = md::ScopeItParams<double>::initialize(c);
    randomize_params(full, rng);
    md::ModelConfig ni = c;
    ni.use_inter_aggregator = false;
    auto local = md::ScopeItParams<double>::initialize(ni);
    randomize_params(local, rng);

    md::Example ex = random_example(rng, "d", 12, 1, 5);
    while (ex.doc.size() < 4) ex = random_example(rng, "d", 12, 5, 5);
    tp::TokenizedDocument perm = ex.doc;
    std::vector<size_t> order(perm.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = (i + 1) % order.size();
    for (size_t i = 0; i < order.size(); ++i) perm.sentence_tokens[i] = ex.doc.sentence_tokens[order[i]];

    auto a = md::score_document(ex.doc, c, full, nullptr).scores;
    auto b = md::score_document(perm, c, full, nullptr).scores;
    double diff = 0;
    for (size_t i = 0; i < order.size(); ++i) diff = std::max(diff, std::abs(b[i] - a[order[i]]));
    CHECK(diff > 1e-9);

    auto la = md::score_document(ex.doc, ni, local, nullptr).scores;
    auto lb = md::score_document(perm, ni, local, nullptr).scores;
    for (size_t i = 0; i < order.size(); ++i) CHECK(lb[i] == la[order[i]]);
  }
}

TEST_CASE("without the inter encoder a score depends only on its sentence") {
  std::mt19937_64 rng(26);
  md::ModelConfig c = tiny();
  c.use_inter_aggregator = false;
  auto p = md::ScopeItParams<float>::initialize(c);
  md::Example ex = random_example(rng, "d", 12, 5, 5);
  while (ex.doc.size() < 3) ex = random_example(rng, "d", 12, 5, 5);
  auto before = md::score_document(ex.doc, c, p, nullptr).scores;
  tp::TokenizedDocument mutated = ex.doc;
  mutated.sentence_tokens[1] = {0, 1, 2, 3, 4, 5, 6};
  mutated.sentence_tokens.push_back({7});
  auto after = md::score_document(mutated, c, p, nullptr).scores;
  CHECK(after[0] == before[0]);
  CHECK(after[2] == before[2]);
}

TEST_CASE("batched forward equals one document at a time") {
  std::mt19937_64 rng(27);
  md::ModelConfig c = tiny();
  auto p = md::ScopeItParams<double>::initialize(c);
  randomize_params(p, rng);
  std::vector<md::Example> ex;
  for (int i = 0; i < 5; ++i) ex.push_back(random_example(rng, "d" + std::to_string(i), 12, 4, 5));
  std::vector<const tp::TokenizedDocument*> docs;
  for (const auto& e : ex) docs.push_back(&e.doc);
  nn::Graph<double> g(false);
  md::ForwardOutput out = md::forward_batch(g, c, p, docs, nullptr);
  const Mat& logits = g.value(out.logits);
  for (size_t d = 0; d < ex.size(); ++d) {
    auto s = md::score_document(ex[d].doc, c, p, nullptr).scores;
    for (size_t i = 0; i < s.size(); ++i) {
      double q = md::logit_to_probability(logits(0, static_cast<Eigen::Index>(out.offsets[d] + i)));
      CHECK(q == doctest::Approx(s[i]).epsilon(1e-13));
    }
  }
}

TEST_CASE("scores lie strictly inside (0, 1)") {
  std::mt19937_64 rng(28);
  md::ModelConfig c = tiny();
  auto p = md::ScopeItParams<float>::initialize(c);
  p.head_b.value(0, 0) = 80;
  md::Example ex = random_example(rng, "d", 12, 4, 5);
  for (double s : md::score_document(ex.doc, c, p, nullptr).scores) {
    CHECK(s > 0);
    CHECK(s < 1);
  }
  p.head_b.value(0, 0) = -80;
  for (double s : md::score_document(ex.doc, c, p, nullptr).scores) CHECK(s > 0);
}

TEST_CASE("parameter count follows the analytic formula") {
  for (bool inter : {true, false}) {
    for (size_t layers : {1u, 2u, 3u}) {
      for (auto [e, h] : {std::pair<size_t, size_t>{4, 3}, {128, 128}, {6, 8}}) {
        md::ModelConfig c = tiny(30, e, h);
        c.use_inter_aggregator = inter;
        c.intra_layers = layers;
        c.inter_layers = 4 - layers;
        size_t expect = 30 * e;
        for (size_t k = 0; k < layers; ++k) {
          size_t in = k ? 2 * h : e;
          expect += 2 * 3 * (h * in + h * h + 2 * h);
        }
        if (inter) {
          for (size_t k = 0; k < 4 - layers; ++k) {
            size_t in = 2 * h;
            expect += 2 * 3 * (h * in + h * h + 2 * h);
          }
        }
        expect += 2 * h + 1;
        CHECK(md::parameter_count(c) == expect);
        CHECK(md::ScopeItParams<float>::zeros(c).count() == expect);
      }
    }
  }
  md::ModelConfig cls;
  cls.embedding = md::EmbeddingKind::kPrecomputed;
  cls.cls_only = true;
  cls.embedding_dim = 10;
  CHECK(md::parameter_count(cls) == md::ScopeItParams<float>::zeros(cls).count());
}

TEST_CASE("gradients of tiny models match finite differences") {
  std::mt19937_64 rng(29);
  for (bool inter : {true, false}) {
    md::ModelConfig c = tiny(10, 3, 2);
    c.use_inter_aggregator = inter;
    auto p = md::ScopeItParams<double>::initialize(c);
    randomize_params(p, rng);
    std::vector<md::Example> ex = {random_example(rng, "a", 10, 4, 5), random_example(rng, "b", 10, 4, 5)};
    std::vector<const md::Example*> batch = {&ex[0], &ex[1]};
    auto build = [&](nn::Graph<double>& g) { return md::batch_loss(g, c, p, batch, nullptr); };
    for (const auto& e : nn::check_gradients(p.all(), build)) {
      INFO(e.name);
      CHECK(e.relative_error < 1e-5);
    }
  }
}

TEST_CASE("cls-only and precomputed models read the store") {
  std::mt19937_64 rng(30);
  std::vector<md::Example> ex = {random_example(rng, "a", 10, 3, 4), random_example(rng, "b", 10, 3, 4)};
  md::EmbeddingStore store = scopeit::testing::random_store(rng, ex, 5, true);
  md::ModelConfig c = md::variant_config("cls-only");
  c.embedding_dim = 5;
  c.inter_hidden = 3;
  auto p = md::ScopeItParams<double>::initialize(c);
  randomize_params(p, rng);
  CHECK(md::score_document(ex[0].doc, c, p, &store).size() == ex[0].doc.size());
  std::vector<const md::Example*> batch = {&ex[0], &ex[1]};
  auto build = [&](nn::Graph<double>& g) { return md::batch_loss(g, c, p, batch, &store); };
  for (const auto& e : nn::check_gradients(p.all(), build)) CHECK(e.relative_error < 1e-5);
  CHECK_THROWS_AS(md::score_document(ex[0].doc, c, p, nullptr), scopeit::MissingEmbedding);
  md::ModelConfig bad;
  bad.cls_only = true;
  CHECK_THROWS_AS(bad.validate(), scopeit::ConfigError);
}

TEST_CASE("metrics arithmetic and recount") {
  md::Metrics m;
  m.add(std::vector<double>{0.9, 0.8, 0.7}, std::vector<int>{1, 0, 1}, 0.5);
  CHECK(m.precision() == doctest::Approx(2.0 / 3));
  CHECK(m.recall() == 1.0);
  CHECK(m.f1() == doctest::Approx(0.8));
  md::Metrics perfect;
  perfect.add(std::vector<double>{0.9, 0.1}, std::vector<int>{1, 0}, 0.5);
  CHECK(perfect.f1() == 1.0);
  md::Metrics edge;
  edge.add(std::vector<double>{0.5}, std::vector<int>{1}, 0.5);
  CHECK(edge.fn == 1);

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> s(200);
  std::vector<int> y(200);
  for (size_t i = 0; i < 200; ++i) {
    s[i] = u(rng);
    y[i] = static_cast<int>(rng() % 2);
  }
  md::Metrics r;
  for (size_t i = 0; i < 200; i += 40) {
    r.add(std::span(s).subspan(i, 40), std::span(y).subspan(i, 40), 0.5);
  }
  double tp = 0, fp = 0, fn = 0;
  for (size_t i = 0; i < 200; ++i) {
    if (s[i] > 0.5 && y[i]) tp++;
    if (s[i] > 0.5 && !y[i]) fp++;
    if (!(s[i] > 0.5) && y[i]) fn++;
  }
  CHECK(r.precision() == doctest::Approx(tp / (tp + fp)));
  CHECK(r.recall() == doctest::Approx(tp / (tp + fn)));
  CHECK(r.f1() == doctest::Approx(2 * tp / (2 * tp + fp + fn)));
  CHECK_THROWS_AS(md::evaluate(tiny(), md::ScopeItParams<float>::initialize(tiny()), {}), scopeit::EmptyCorpus);
}

namespace {

// Sentences that contain token 4 are relevant.
std::vector<md::Example> separable(std::mt19937_64& rng, size_t n) {
  std::vector<md::Example> out;
  for (size_t i = 0; i < n; ++i) {
    md::Example e = random_example(rng, "s" + std::to_string(i), 10, 4, 4);
    for (size_t k = 0; k < e.doc.size(); ++k) {
      auto& s = e.doc.sentence_tokens[k];
      std::replace(s.begin(), s.end(), 4, 5);
      if (e.labels[k]) s[rng() % s.size()] = 4;
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace

TEST_CASE("training learns a separable task and keeps the best checkpoint") {
  std::mt19937_64 rng(32);
  auto train = separable(rng, 24);
  auto val = separable(rng, 8);
  md::ModelConfig c = tiny(10, 8, 8);
  md::TrainConfig tc;
  tc.lr = 0.02;
  tc.epochs = 40;
  tc.batch_size = 4;
  md::TrainResult r = md::train(c, train, val, tc);
  REQUIRE(!r.log.empty());
  for (const auto& rec : r.log) CHECK(r.best_val_loss <= rec.val_loss);
  CHECK(md::mean_loss(c, r.params, val, nullptr) == doctest::Approx(r.best_val_loss).epsilon(1e-9));
  CHECK(md::evaluate(c, r.params, val).f1() > 0.9);
  for (size_t i = 1; i < r.log.size(); ++i) CHECK(r.log[i].lr <= r.log[i - 1].lr);

  md::TrainResult again = md::train(c, train, val, tc);
  REQUIRE(again.log.size() == r.log.size());
  for (size_t i = 0; i < r.log.size(); ++i) {
    CHECK(again.log[i].train_loss == r.log[i].train_loss);
    CHECK(again.log[i].val_loss == r.log[i].val_loss);
  }
  CHECK_THROWS_AS(md::train(c, {}, val, tc), scopeit::EmptyCorpus);
  CHECK_THROWS_AS(md::train(c, train, {}, tc), scopeit::EmptyCorpus);
}

TEST_CASE("non-finite loss aborts training") {
  std::mt19937_64 rng(33);
  auto train = separable(rng, 4);
  md::ModelConfig c = tiny(10, 4, 3);
  auto init = md::ScopeItParams<float>::initialize(c);
  init.head_b.value(0, 0) = std::numeric_limits<float>::quiet_NaN();
  CHECK_THROWS_AS(md::train(c, train, train, {}, nullptr, {}, &init), scopeit::NonFiniteLoss);
}

TEST_CASE("training on precomputed embeddings leaves the store untouched") {
  std::mt19937_64 rng(34);
  auto train = separable(rng, 6);
  md::EmbeddingStore store = scopeit::testing::random_store(rng, train, 4, false);
  std::string before = store.serialize();
  md::ModelConfig c = tiny(10, 4, 3);
  c.embedding = md::EmbeddingKind::kPrecomputed;
  md::TrainConfig tc;
  tc.epochs = 3;
  tc.lr = 0.01;
  md::train(c, train, train, tc, &store);
  CHECK(scopeit::fnv1a64(store.serialize()) == scopeit::fnv1a64(before));
  CHECK(md::EmbeddingStore::parse(before).serialize() == before);
}

TEST_CASE("checkpoint round trip and vocabulary guard") {
  tp::Vocabulary vocab = tp::Vocabulary::build_word_level(std::vector<std::string>{"hello there meeting"});
  md::ModelConfig c = tiny();
  md::ScopeItModel m = md::ScopeItModel::create(c, vocab);
  std::string bytes = nn::serialize_container(m.to_container());
  md::ScopeItModel back = md::ScopeItModel::from_container(nn::parse_container(bytes));
  CHECK(nn::serialize_container(back.to_container()) == bytes);
  CHECK(back.vocab().id() == vocab.id());
  CHECK(back.config().vocab_size == vocab.size());
  nlohmann::json header = m.to_container().header_json();
  CHECK(header["parameter_count"] == md::parameter_count(m.config()));

  tp::TokenizedDocument doc = m.tokenize(tp::preprocess_text("x", "hello there. meeting at noon"));
  CHECK(back.score(doc).size() == doc.size());
  tp::Vocabulary other = tp::Vocabulary::build_word_level(std::vector<std::string>{"something else"});
  tp::TokenizedDocument foreign = tp::tokenize_document(tp::preprocess_text("y", "hello"), other);
  CHECK_THROWS_AS(back.score(foreign), scopeit::VocabularyMismatch);
  md::EmbeddingStore wrong(4, other.hash());
  CHECK_THROWS_AS(back.check_store(&wrong), scopeit::VocabularyMismatch);
}

TEST_CASE("model and train configs parse from json with defaults") {
  md::ModelConfig c = nlohmann::json::parse(R"({"intra_hidden": 16, "use_inter_aggregator": false})").get<md::ModelConfig>();
  CHECK(c.intra_hidden == 16);
  CHECK(c.inter_hidden == 128);
  CHECK_FALSE(c.use_inter_aggregator);
  CHECK_THROWS_AS(nlohmann::json::parse(R"({"bogus": 1})").get<md::ModelConfig>(), scopeit::ConfigError);
  md::TrainConfig t = nlohmann::json::parse(R"({"epochs": 7})").get<md::TrainConfig>();
  CHECK(t.epochs == 7);
  CHECK(t.lr == 1e-4);
  CHECK(t.batch_size == 8);
  CHECK(t.plateau_patience == 5);
  CHECK(t.early_stop_patience == 8);
  CHECK(t.anneal_factor == 0.5);
}
