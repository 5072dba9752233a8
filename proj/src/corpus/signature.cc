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

#include "scopeit/corpus/signature.h"

#include <algorithm>
#include <filesystem>

#include "scopeit/common/error.h"
#include "scopeit/common/io.h"

namespace scopeit::corpus {
namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    pos = nl + 1;
  }
  return lines;
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\f\v") == std::string::npos;
}

}  // namespace

LineLabeledEmail parse_line_labeled(std::string id, std::string_view text,
                                    std::optional<std::string_view> tags) {
  LineLabeledEmail e;
  e.id = std::move(id);
  std::vector<std::string> lines = split_lines(text);
  if (tags) {
    std::vector<std::string> t = split_lines(*tags);
    while (!t.empty() && blank(t.back())) t.pop_back();
    if (t.size() != lines.size()) {
      throw LabelMisalignment(e.id + ": " + std::to_string(lines.size()) + " lines but " +
                              std::to_string(t.size()) + " tags");
    }
    for (size_t i = 0; i < t.size(); ++i) {
      if (t[i] == "body") {
        e.tags.push_back(LineTag::kBody);
      } else if (t[i] == "signature") {
        e.tags.push_back(LineTag::kSignature);
      } else {
        throw UnknownTag(e.id + ": unknown tag '" + t[i] + "' on line " + std::to_string(i + 1));
      }
    }
    e.lines = std::move(lines);
    return e;
  }
  bool in_signature = false;
  for (std::string& line : lines) {
    if (!in_signature && line == kSignatureSentinel) {
      in_signature = true;
      continue;
    }
    e.lines.push_back(std::move(line));
    e.tags.push_back(in_signature ? LineTag::kSignature : LineTag::kBody);
  }
  return e;
}

std::vector<LineLabeledEmail> load_line_labeled(const std::string& path) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::recursive_directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() != kTagsExtension) {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
  } else {
    files.emplace_back(path);
  }
  std::vector<LineLabeledEmail> out;
  for (const fs::path& f : files) {
    std::string text = read_file(f.string());
    fs::path sidecar = f;
    sidecar += kTagsExtension;
    std::string id = fs::is_directory(path) ? fs::relative(f, path).string() : f.filename().string();
    if (fs::exists(sidecar)) {
      std::string tags = read_file(sidecar.string());
      out.push_back(parse_line_labeled(id, text, tags));
    } else {
      out.push_back(parse_line_labeled(id, text));
    }
  }
  return out;
}

LabeledDocument adapt_signature(const LineLabeledEmail& email) {
  std::vector<int> labels;
  std::vector<int> passages;
  int passage = 0;
  for (size_t i = 0; i < email.lines.size(); ++i) {
    labels.push_back(email.tags[i] == LineTag::kSignature ? 1 : 0);
    passages.push_back(passage);
    if (blank(email.lines[i])) ++passage;
  }
  return make_document(email.id, email.lines, std::move(labels), SourceTag::kSignature,
                       std::move(passages));
}

}  // namespace scopeit::corpus
