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
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "generators.h"
#include "scopeit/common/error.h"
#include "scopeit/scoper/scoper.h"
#include "scopeit/textprep/document.h"

namespace sc = scopeit::scoper;
namespace tp = scopeit::textprep;
using scopeit::testing::pick;
using scopeit::testing::random_document;

TEST_CASE("scope selects sentences above the threshold") {
  auto doc = tp::preprocess_sentences("d", std::vector<std::string>{"One.", "Two.", "Three."});
  std::vector<double> scores = {0.9, 0.005, 0.02};
  auto m = sc::scope(doc, scores, 0.01);
  CHECK(m.indices == std::vector<size_t>{0, 2});
  CHECK(m.text == "One. Three.");
  CHECK(m.actionable);
  CHECK(m.to_json() == nlohmann::json{{"indices", {0, 2}},
                                      {"text", "One. Three."},
                                      {"threshold", 0.01},
                                      {"actionable", true}});
  CHECK(sc::ScopedMessage::from_json(m.to_json()).to_json() == m.to_json());
}

TEST_CASE("nothing above the threshold is not actionable") {
  auto doc = tp::preprocess_sentences("d", std::vector<std::string>{"One.", "Two."});
  std::vector<double> scores = {0.01, 0.0};
  auto m = sc::scope(doc, scores);
  CHECK(m.indices.empty());
  CHECK(m.text.empty());
  CHECK_FALSE(m.actionable);
  CHECK(m.threshold == sc::kScopeThreshold);
}

TEST_CASE("scope rejects misaligned scores") {
  auto doc = tp::preprocess_sentences("d", std::vector<std::string>{"One.", "Two."});
  std::vector<double> scores = {0.5};
  CHECK_THROWS_AS(sc::scope(doc, scores), scopeit::AlignmentError);
}

TEST_CASE("scoped text equals a filter-then-join oracle") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0, 0.05);
  for (int k = 0; k < 300; ++k) {
    auto doc = tp::preprocess_text("r", random_document(rng, pick(rng, 4), pick(rng, 4)));
    std::vector<double> scores(doc.size());
    for (double& s : scores) s = u(rng);
    auto m = sc::scope(doc, scores, 0.02);
    std::vector<std::string> originals = doc.original_sentences();
    std::string expect;
    bool first = true;
    for (size_t i = 0; i < originals.size(); ++i) {
      if (scores[i] <= 0.02) continue;
      if (!first) expect += " ";
      expect += originals[i];
      first = false;
    }
    CHECK(m.text == expect);
    CHECK(m.actionable == !m.indices.empty());
  }
}

TEST_CASE("raising the threshold never adds sentences") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 20; ++k) {
    auto doc = tp::preprocess_text("m", random_document(rng, 1, 1));
    std::vector<double> scores(doc.size());
    for (double& s : scores) s = u(rng);
    std::vector<size_t> prev;
    for (int t = 0; t <= 100; ++t) {
      auto m = sc::scope(doc, scores, t / 100.0);
      for (size_t i : m.indices) {
        if (t > 0) CHECK(std::find(prev.begin(), prev.end(), i) != prev.end());
      }
      prev = m.indices;
    }
  }
}

TEST_CASE("is_actionable agrees with an any-over-threshold scan") {
  std::vector<double> one = {0.5};
  CHECK(sc::is_actionable(one));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0, 0.03);
  for (int k = 0; k < 1000; ++k) {
    std::vector<double> scores(pick(rng, 6));
    for (double& s : scores) s = u(rng);
    bool any = false;
    for (double s : scores) any = any || s > 0.01;
    CHECK(sc::is_actionable(scores) == any);
  }
}
