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

#ifndef SCOPEIT_CORPUS_SIGNATURE_H_
#define SCOPEIT_CORPUS_SIGNATURE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scopeit/corpus/corpus.h"

namespace scopeit::corpus {

inline constexpr std::string_view kSignatureSentinel = "#SIG#";
inline constexpr std::string_view kTagsExtension = ".tags";

enum class LineTag { kBody, kSignature };

struct LineLabeledEmail {
  std::string id;
  std::vector<std::string> lines;
  std::vector<LineTag> tags;
};

// Without `tags`, the lines after a "#SIG#" sentinel line are signature and
// the sentinel itself is dropped. With a sidecar, each of its lines is
// "body" or "signature" (UnknownTag otherwise) and the counts must match.
LineLabeledEmail parse_line_labeled(std::string id, std::string_view text,
                                    std::optional<std::string_view> tags = std::nullopt);

// A single email file, or every non-sidecar file of a directory in name
// order. "<file>.tags" next to an email is used as its sidecar.
std::vector<LineLabeledEmail> load_line_labeled(const std::string& path);

// One sentence per line, label 1 for signature lines. Blank lines separate
// passages and are kept as sentences so line count and order survive.
LabeledDocument adapt_signature(const LineLabeledEmail& email);

}  // namespace scopeit::corpus

#endif  // SCOPEIT_CORPUS_SIGNATURE_H_
