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

#ifndef SCOPEIT_CLI_SERVICE_H_
#define SCOPEIT_CLI_SERVICE_H_

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "scopeit/model/embedding_store.h"
#include "scopeit/model/model.h"
#include "scopeit/scoper/scoper.h"

namespace scopeit::cli {

inline constexpr size_t kMaxRequestBytes = 1 << 20;

// {"id", "sentences": [{"text", "score"}], "scoped_text", "actionable"} for raw
// email text. Shared by `score` and the HTTP endpoint.
nlohmann::json score_text(const model::ScopeItModel& m, const std::string& id,
                          std::string_view text, double threshold = scoper::kScopeThreshold,
                          const model::EmbeddingStore* store = nullptr);

struct HttpReply {
  int status = 200;
  std::string body;
};

// POST /score body handling without any networking: 413 above
// kMaxRequestBytes, 400 for malformed JSON or a missing "text" string.
HttpReply handle_score_request(const model::ScopeItModel& m, std::string_view body,
                               double threshold = scoper::kScopeThreshold,
                               const model::EmbeddingStore* store = nullptr);

// Blocks serving POST /score until the process is stopped. Returns false when
// the socket cannot be bound.
bool serve(const model::ScopeItModel& m, const std::string& host, int port,
           double threshold = scoper::kScopeThreshold,
           const model::EmbeddingStore* store = nullptr);

}  // namespace scopeit::cli

#endif  // SCOPEIT_CLI_SERVICE_H_
