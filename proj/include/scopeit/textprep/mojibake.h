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

#ifndef SCOPEIT_TEXTPREP_MOJIBAKE_H_
#define SCOPEIT_TEXTPREP_MOJIBAKE_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scopeit::textprep {

// Bumped whenever an entry is added to or removed from the table.
inline constexpr int kMojibakeTableVersion = 1;

// (corrupted, intended) pairs. Each corrupted form is the UTF-8 encoding of
// the intended character read back one byte per character, under both the
// Windows-1252 and the ISO-8859-1 interpretation of the bytes.
const std::vector<std::pair<std::string, std::string>>& mojibake_table();

// Replaces every table hit, scanning left to right and preferring the longest
// corrupted form at each position. Text without hits is returned unchanged.
std::string repair_mojibake(std::string_view text);

}  // namespace scopeit::textprep

#endif  // SCOPEIT_TEXTPREP_MOJIBAKE_H_
