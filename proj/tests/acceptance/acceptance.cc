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

// Prints one PASS/FAIL/SKIP line per acceptance criterion and exits non-zero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "generators.h"
#include "model_fixtures.h"
#include "oracles.h"
#include "scopeit/augment/augment.h"
#include "scopeit/augment/synthetic.h"
#include "scopeit/cli/pipeline.h"
#include "scopeit/common/io.h"
#include "scopeit/corpus/signature.h"
#include "scopeit/extractors/extractors.h"
#include "scopeit/model/forward.h"
#include "scopeit/nn/gradcheck.h"
#include "scopeit/nn/loss.h"
#include "scopeit/nnprobe/index.h"
#include "scopeit/scoper/scoper.h"
#include "scopeit/textprep/replace.h"

namespace ag = scopeit::augment;
namespace cl = scopeit::cli;
namespace cp = scopeit::corpus;
namespace md = scopeit::model;
namespace nn = scopeit::nn;
namespace np = scopeit::nnprobe;
namespace tp = scopeit::textprep;
using scopeit::testing::pick;

namespace {

struct Outcome {
  enum Status { kPass, kFail, kSkip } status = kFail;
  std::string detail;
};

Outcome verdict(bool ok, std::string detail) {
  return {ok ? Outcome::kPass : Outcome::kFail, std::move(detail)};
}

struct Criterion {
  std::string name;
  double budget_seconds;  // 0 means unbounded
  std::function<Outcome()> run;
};

// Small recurrent dims used where training time matters more than capacity.
cl::RunConfig small_run(const std::string& variant = "scopeit", int epochs = 30) {
  cl::RunConfig rc;
  rc.variant = variant;
  rc.model = {{"embedding_dim", 32}, {"intra_hidden", 32}, {"inter_hidden", 32}};
  rc.train.lr = 2e-3;
  rc.train.batch_size = 16;
  rc.train.epochs = epochs;
  return rc;
}

ag::SyntheticCorpus generate(const nlohmann::json& spec, uint64_t seed) {
  return ag::build_synthetic_corpus(ag::SyntheticSpec::from_json(spec), seed);
}

// Criteria ------------------------------------------------------------------

Outcome gradient_oracle() {
  std::mt19937_64 rng(2026);
  const size_t configs = 24;
  double worst = 0;
  std::string worst_name;
  size_t tensors = 0;
  for (size_t k = 0; k < configs; ++k) {
    md::ModelConfig c;
    c.vocab_size = 6 + pick(rng, 7);
    c.embedding_dim = 1 + pick(rng, 6);
    c.intra_layers = 1 + pick(rng, 2);
    c.inter_layers = 1 + pick(rng, 2);
    c.intra_hidden = 1 + pick(rng, 8);
    c.inter_hidden = 1 + pick(rng, 8);
    c.use_inter_aggregator = k % 3 != 2;
    bool precomputed = k % 4 == 3;
    if (precomputed) c.embedding = md::EmbeddingKind::kPrecomputed;
    auto p = md::ScopeItParams<double>::initialize(c);
    scopeit::testing::randomize_params(p, rng);
    std::vector<md::Example> ex;
    for (size_t d = 0, n = 1 + pick(rng, 2); d < n; ++d) {
      ex.push_back(scopeit::testing::random_example(rng, "g" + std::to_string(d), c.vocab_size, 4, 5));
    }
    md::EmbeddingStore store =
        scopeit::testing::random_store(rng, ex, c.embedding_dim, false);
    std::vector<const md::Example*> batch;
    for (const auto& e : ex) batch.push_back(&e);
    auto build = [&](nn::Graph<double>& g) {
      return md::batch_loss(g, c, p, batch, precomputed ? &store : nullptr);
    };
    for (const auto& e : nn::check_gradients(p.all(), build, 1e-5)) {
      ++tensors;
      if (e.relative_error >= worst) {
        worst = e.relative_error;
        worst_name = fmt::format("config {} {}", k, e.name);
      }
    }
  }
  return verdict(worst < 1e-5, fmt::format("{} configs, {} tensors, max relative error {:.2e} ({}), "
                                           "tolerance 1e-5",
                                           configs, tensors, worst, worst_name));
}

Outcome overfit() {
  ag::SyntheticCorpus c = generate({{"separable", 50}, {"fractions", {0.8, 0.2, 0.0}}}, 11);
  cl::RunConfig rc;
  rc.train.epochs = 200;
  int first = 0;
  cl::FitResult fr = cl::fit(rc, c.split.train, c.split.validation, nullptr,
                             [&](const md::EpochRecord& r) {
                               if (first == 0 && r.val_f1 == 1.0) first = r.epoch;
                             });
  md::Metrics m = cl::evaluate_corpus(fr.model, c.split.validation, rc.classify_threshold);
  return verdict(m.f1() == 1.0 && first > 0,
                 fmt::format("{} train / {} validation docs, validation F1 {:.4f} (required 1.0), "
                             "first reached at epoch {}, best epoch {}, {} epochs run",
                             c.split.train.size(), c.split.validation.size(), m.f1(), first,
                             fr.result.best_epoch, fr.result.log.size()));
}

Outcome ablation() {
  const double n = 6500;
  ag::SyntheticCorpus c =
      generate({{"context_dependent", 6500}, {"fractions", {5000 / n, 500 / n, 1000 / n}}}, 21);
  double ceiling = scopeit::testing::per_sentence_bayes_f1(c.split.test);
  cl::FitResult full = cl::fit(small_run("scopeit", 15), c.split.train, c.split.validation);
  cl::FitResult flat = cl::fit(small_run("no-inter", 15), c.split.train, c.split.validation);
  double f_full = cl::evaluate_corpus(full.model, c.split.test, md::kClassifyThreshold).f1();
  double f_flat = cl::evaluate_corpus(flat.model, c.split.test, md::kClassifyThreshold).f1();
  bool ok = f_full >= 0.95 && f_flat <= ceiling + 0.02 && f_full - f_flat >= 0.2;
  return verdict(ok, fmt::format("{}/{}/{} docs; full F1 {:.4f} (>= 0.95), no-inter F1 {:.4f} "
                                 "(<= ceiling {:.4f} + 0.02), gap {:.4f} (>= 0.2)",
                                 c.split.train.size(), c.split.validation.size(),
                                 c.split.test.size(), f_full, f_flat, ceiling, f_full - f_flat));
}

double false_positive_rate(const md::ScopeItModel& m, const std::vector<cp::LabeledDocument>& docs) {
  md::Metrics met = cl::evaluate_corpus(m, docs, md::kClassifyThreshold);
  return static_cast<double>(met.fp) / static_cast<double>(met.fp + met.tn);
}

// Both regimes are trained on three fixed seeds; a single run without
// negatives lands on zero false positives for some seeds.
Outcome augmentation() {
  const nlohmann::json base = {{"pos_templates", 400}, {"replies", 100}};
  nlohmann::json augmented = base;
  augmented["negatives"] = 150;
  augmented["review_negatives"] = 50;
  ag::SyntheticCorpus probe =
      generate({{"negatives", 150}, {"review_negatives", 50}, {"fractions", {0.0, 0.0, 1.0}}}, 97);
  for (const auto& d : probe.split.test) {
    for (int y : d.labels) {
      if (y != 0) return verdict(false, "probe slice contains a relevant sentence");
    }
  }
  double mean_without = 0, mean_with = 0, max_with = 0;
  std::string per_seed;
  const std::vector<uint64_t> seeds = {31, 32, 33};
  for (uint64_t seed : seeds) {
    cl::RunConfig rc = small_run();
    rc.seed = seed;
    ag::SyntheticCorpus a = generate(base, seed);
    ag::SyntheticCorpus b = generate(augmented, seed);
    double fa = false_positive_rate(cl::fit(rc, a.split.train, a.split.validation).model, probe.split.test);
    double fb = false_positive_rate(cl::fit(rc, b.split.train, b.split.validation).model, probe.split.test);
    mean_without += fa / static_cast<double>(seeds.size());
    mean_with += fb / static_cast<double>(seeds.size());
    max_with = std::max(max_with, fb);
    per_seed += fmt::format(" {}:{:.4f}/{:.4f}", seed, fa, fb);
  }
  return verdict(mean_without > mean_with && max_with <= 0.02,
                 fmt::format("{} irrelevant docs; mean sentence FP rate without negatives {:.4f}, "
                             "with negatives {:.4f}, worst with {:.4f} (required: without > with, "
                             "with <= 0.02); per seed without/with{}",
                             probe.split.test.size(), mean_without, mean_with, max_with, per_seed));
}

Outcome extractor_study() {
  ag::SyntheticCorpus c = generate({{"pos_templates", 400},
                                    {"replies", 100},
                                    {"negatives", 150},
                                    {"review_negatives", 50}},
                                   41);
  cl::FitResult fr = cl::fit(small_run(), c.split.train, c.split.validation);
  scopeit::extractors::ExtractionReport r = scopeit::extractors::compare_before_after(
      c.split.test, cl::scorer_for(fr.model), scopeit::scoper::kScopeThreshold);
  bool ok = true;
  std::string detail = fmt::format("{} test docs", r.documents);
  for (const auto& k : r.kinds) {
    double dp = k.after.precision() - k.before.precision();
    bool kind_ok = dp >= 0.2 && k.after.recall() >= k.before.recall() - 0.001;
    ok = ok && kind_ok;
    detail += fmt::format("; {} precision {:.3f}->{:.3f} (delta {:.3f} >= 0.2), recall {:.3f}->{:.3f}",
                          scopeit::extractors::to_string(k.kind), k.before.precision(),
                          k.after.precision(), dp, k.before.recall(), k.after.recall());
  }
  tp::Document reply = tp::preprocess_text("reply", "Thanks for setting this up. Look forward to meeting you.");
  bool actionable = scopeit::scoper::is_actionable(cl::scorer_for(fr.model)(
      cp::make_document("reply", reply.original_sentences(), std::vector<int>(reply.size(), 0))));
  detail += fmt::format("; informational: thank-you reply actionable = {}", actionable);
  return verdict(ok, detail);
}

cp::LabeledDocument random_passage_doc(std::mt19937_64& rng, const std::string& id, size_t passages) {
  std::vector<std::string> sentences;
  std::vector<int> labels, pass;
  for (size_t p = 0; p < passages; ++p) {
    for (size_t i = 0, n = 1 + pick(rng, 3); i < n; ++i) {
      const auto& pool = scopeit::testing::word_pool();
      sentences.push_back(pool[pick(rng, pool.size())] + " " + pool[pick(rng, pool.size())] + " " +
                          std::to_string(p) + "." + std::to_string(i));
      labels.push_back(static_cast<int>(pick(rng, 2)));
      pass.push_back(static_cast<int>(p));
    }
  }
  return cp::make_document(id, sentences, labels, cp::SourceTag::kInternal, pass);
}

std::vector<std::vector<std::string>> passage_texts(const cp::LabeledDocument& d) {
  std::vector<std::vector<std::string>> out;
  for (auto [b, e] : ag::passage_ranges(d.doc)) {
    out.emplace_back(d.doc.sentences.begin() + static_cast<long>(b),
                     d.doc.sentences.begin() + static_cast<long>(e));
  }
  return out;
}

std::multiset<std::pair<std::string, int>> sentence_label_pairs(const cp::LabeledDocument& d) {
  std::multiset<std::pair<std::string, int>> s;
  for (size_t i = 0; i < d.size(); ++i) s.emplace(d.doc.sentences[i], d.labels[i]);
  return s;
}

std::vector<std::pair<double, size_t>> brute_knn(const np::EmbeddingIndex& index,
                                                 const std::vector<float>& q, size_t k) {
  std::vector<std::pair<double, size_t>> all;
  for (size_t r = 0; r < index.size(); ++r) {
    auto row = index.row(r);
    double d = 0;
    if (index.metric() == np::Metric::kEuclidean) {
      for (size_t j = 0; j < q.size(); ++j) d += (double(q[j]) - row[j]) * (double(q[j]) - row[j]);
      d = std::sqrt(d);
    } else {
      double dot = 0, a = 0, b = 0;
      for (size_t j = 0; j < q.size(); ++j) {
        dot += double(q[j]) * row[j];
        a += double(q[j]) * q[j];
        b += double(row[j]) * row[j];
      }
      d = a == 0 || b == 0 ? 1.0 : 1.0 - dot / std::sqrt(a * b);
    }
    all.emplace_back(d, r);
  }
  std::sort(all.begin(), all.end());
  all.resize(std::min(k, all.size()));
  return all;
}

Outcome invariants() {
  std::mt19937_64 rng(61);
  std::vector<std::string> failures;

  size_t inversion_bad = 0;
  for (int i = 0; i < 10000; ++i) {
    std::string doc = scopeit::testing::random_document(rng, pick(rng, 4), pick(rng, 4));
    tp::CleanedText c = tp::replace_urls_emails(doc);
    inversion_bad += tp::invert_replacements(c.text, c.map) != doc;
  }
  if (inversion_bad) failures.push_back(fmt::format("inversion {}/10000", inversion_bad));

  size_t shuffle_bad = 0;
  for (int i = 0; i < 1000; ++i) {
    cp::LabeledDocument d = random_passage_doc(rng, "s" + std::to_string(i), 1 + pick(rng, 7));
    cp::LabeledDocument s = ag::shuffle_passages(d, rng());
    auto a = passage_texts(d), b = passage_texts(s);
    bool ok = sentence_label_pairs(d) == sentence_label_pairs(s) && a.size() == b.size() &&
              a.front() == b.front() && a.back() == b.back() &&
              std::multiset(a.begin(), a.end()) == std::multiset(b.begin(), b.end());
    if (a.size() <= 3) ok = ok && a == b && s.source == d.source;
    shuffle_bad += !ok;
  }
  if (shuffle_bad) failures.push_back(fmt::format("shuffle {}/1000", shuffle_bad));

  size_t mono_bad = 0;
  for (int i = 0; i < 200; ++i) {
    std::string raw;
    for (size_t k = 0, n = 1 + pick(rng, 8); k < n; ++k) {
      raw += scopeit::testing::word_pool()[pick(rng, 20)] + " item " + std::to_string(k) + ".\n";
    }
    tp::Document doc = tp::preprocess_text("m", raw);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<double> scores(doc.size());
    for (double& s : scores) s = u(rng);
    std::vector<size_t> prev;
    for (int t = 0; t <= 100; ++t) {
      auto msg = scopeit::scoper::scope(doc, scores, t / 100.0);
      if (t > 0 && !std::includes(prev.begin(), prev.end(), msg.indices.begin(), msg.indices.end())) {
        ++mono_bad;
      }
      prev = msg.indices;
    }
  }
  if (mono_bad) failures.push_back(fmt::format("monotonicity {}", mono_bad));

  size_t knn_bad = 0;
  std::normal_distribution<float> g(0, 1);
  for (np::Metric metric : {np::Metric::kEuclidean, np::Metric::kCosine}) {
    np::EmbeddingIndex index(8, metric);
    for (size_t r = 0; r < 400; ++r) {
      std::vector<float> v(8);
      for (float& x : v) x = g(rng);
      index.add({"d" + std::to_string(r / 4), r % 4, "t"}, v);
    }
    for (int q = 0; q < 100; ++q) {
      std::vector<float> v(8);
      for (float& x : v) x = g(rng);
      auto got = index.query(v, 5);
      auto want = brute_knn(index, v, 5);
      bool ok = got.size() == want.size();
      for (size_t i = 0; ok && i < got.size(); ++i) {
        ok = got[i].row == want[i].second && std::abs(got[i].distance - want[i].first) < 1e-9;
      }
      knn_bad += !ok;
    }
  }
  if (knn_bad) failures.push_back(fmt::format("k-NN {}/200", knn_bad));

  std::vector<std::string> sentences = {"can we meet at noon", "thanks for the update"};
  md::ModelConfig c = md::variant_config("scopeit");
  c.embedding_dim = 8;
  c.intra_hidden = c.inter_hidden = 6;
  md::ScopeItModel m = md::ScopeItModel::create(c, tp::Vocabulary::build_wordpiece(sentences, 100));
  auto dir = std::filesystem::temp_directory_path();
  std::string p1 = (dir / "scopeit_acceptance_a.ckpt").string();
  std::string p2 = (dir / "scopeit_acceptance_b.ckpt").string();
  m.save(p1);
  md::ScopeItModel back = md::ScopeItModel::load(p1);
  back.save(p2);
  tp::Document doc = tp::preprocess_text("c", "Can we meet at noon?\nThanks for the update.");
  bool ckpt_ok = scopeit::read_file(p1) == scopeit::read_file(p2) &&
                 m.score(m.tokenize(doc)).scores == back.score(back.tokenize(doc)).scores;
  if (!ckpt_ok) failures.push_back("checkpoint round trip");

  std::string detail = "10000 inversions, 1000 shuffles, 200x101 thresholds, 200 k-NN queries, "
                       "checkpoint round trip";
  if (!failures.empty()) {
    detail += "; failed:";
    for (const auto& f : failures) detail += " " + f;
  }
  return verdict(failures.empty(), detail);
}

Outcome bce_values() {
  const double eps = nn::kBceEpsilon;
  struct Case {
    std::vector<double> p;
    std::vector<int> y;
    double expect;
  } cases[] = {{{1 - eps}, {1}, -std::log(1 - eps)},
               {{0.5, 0.5}, {1, 0}, 2 * std::log(2.0)},
               {{0.25}, {1}, std::log(4.0)}};
  double worst = 0;
  for (const Case& c : cases) worst = std::max(worst, std::abs(nn::bce_loss(c.p, c.y) - c.expect));
  return verdict(worst < 1e-9, fmt::format("3 cases, max abs error {:.2e}, tolerance 1e-9", worst));
}

Outcome signature_mode() {
  const char* path = std::getenv("SCOPEIT_SIGNATURE_DATA");
  if (path == nullptr || *path == '\0') return {Outcome::kSkip, "SCOPEIT_SIGNATURE_DATA not set"};
  std::vector<cp::LabeledDocument> docs;
  for (const auto& e : cp::load_line_labeled(path)) docs.push_back(cp::adapt_signature(e));
  cp::CorpusSplit split = cp::split_corpus(std::move(docs), {0.8, 0.1, 0.1}, 1);
  cl::RunConfig rc = small_run();
  cl::FitResult fr = cl::fit(rc, split.train, split.validation);
  md::Metrics m = cl::evaluate_corpus(fr.model, split.test, rc.classify_threshold);
  return verdict(m.f1() >= 0.95, fmt::format("{}/{}/{} emails, test F1 {:.4f} (>= 0.95)",
                                             split.train.size(), split.validation.size(),
                                             split.test.size(), m.f1()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<std::string> only;
  bool verbose = false;
  app.add_option("--only", only, "Run only these criteria");
  app.add_flag("--verbose", verbose, "Log training progress");
  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(verbose ? spdlog::level::info : spdlog::level::warn);

  const std::vector<Criterion> criteria = {
      {"gradient-oracle", 60, gradient_oracle},
      {"overfit", 120, overfit},
      {"ablation", 900, ablation},
      {"augmentation", 900, augmentation},
      {"extractor-study", 300, extractor_study},
      {"invariants", 180, invariants},
      {"bce-values", 0, bce_values},
      {"signature-mode", 0, signature_mode},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.name) == only.end()) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {Outcome::kFail, std::string("error: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = fmt::format("{:.1f} s", secs);
    if (c.budget_seconds > 0) {
      timing += fmt::format(" of {:.0f} s", c.budget_seconds);
      if (o.status == Outcome::kPass && secs >= c.budget_seconds) {
        o.status = Outcome::kFail;
        o.detail += "; over time budget";
      }
    }
    const char* tag = o.status == Outcome::kPass ? "PASS" : o.status == Outcome::kSkip ? "SKIP" : "FAIL";
    failed += o.status == Outcome::kFail;
    std::cout << tag << " " << c.name << ": " << o.detail << " [" << timing << "]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
