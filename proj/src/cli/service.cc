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

#include "scopeit/cli/service.h"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "scopeit/common/error.h"
#include "scopeit/textprep/document.h"

namespace scopeit::cli {
namespace {

HttpReply error_reply(int status, const std::string& message) {
  return {status, nlohmann::json{{"error", message}}.dump()};
}

}  // namespace

nlohmann::json score_text(const model::ScopeItModel& m, const std::string& id,
                          std::string_view text, double threshold,
                          const model::EmbeddingStore* store) {
  textprep::Document doc = textprep::preprocess_text(id, text);
  model::RelevanceScores s = m.score(m.tokenize(doc), store);
  nlohmann::json sentences = nlohmann::json::array();
  for (size_t i = 0; i < doc.size(); ++i) {
    sentences.push_back({{"text", doc.original_sentence(i)}, {"score", s.scores[i]}});
  }
  scoper::ScopedMessage scoped = scoper::scope(doc, s.scores, threshold);
  return {{"id", id},
          {"sentences", sentences},
          {"scoped_text", scoped.text},
          {"actionable", scoped.actionable}};
}

HttpReply handle_score_request(const model::ScopeItModel& m, std::string_view body,
                               double threshold, const model::EmbeddingStore* store) {
  if (body.size() > kMaxRequestBytes) {
    return error_reply(413, "request body exceeds " + std::to_string(kMaxRequestBytes) + " bytes");
  }
  nlohmann::json req = nlohmann::json::parse(body, nullptr, false);
  if (req.is_discarded() || !req.is_object()) return error_reply(400, "body is not a JSON object");
  if (!req.contains("text") || !req["text"].is_string()) {
    return error_reply(400, "field \"text\" must be a string");
  }
  std::string id = "request";
  if (req.contains("id")) {
    if (!req["id"].is_string()) return error_reply(400, "field \"id\" must be a string");
    id = req["id"].get<std::string>();
  }
  try {
    return {200, score_text(m, id, req["text"].get<std::string>(), threshold, store).dump()};
  } catch (const Error& e) {
    return error_reply(422, e.what());
  }
}

bool serve(const model::ScopeItModel& m, const std::string& host, int port, double threshold,
           const model::EmbeddingStore* store) {
  httplib::Server server;
  server.set_payload_max_length(kMaxRequestBytes);
  server.Post("/score", [&](const httplib::Request& req, httplib::Response& res) {
    HttpReply reply = handle_score_request(m, req.body, threshold, store);
    res.status = reply.status;
    res.set_content(reply.body, "application/json");
  });
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.status == 413) {
      res.set_content(nlohmann::json{{"error", "request body too large"}}.dump(),
                      "application/json");
    }
  });
  spdlog::info("serving POST /score on {}:{}", host, port);
  return server.listen(host, port);
}

}  // namespace scopeit::cli
