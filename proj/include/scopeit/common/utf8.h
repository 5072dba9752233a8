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

#ifndef SCOPEIT_COMMON_UTF8_H_
#define SCOPEIT_COMMON_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>

namespace scopeit::utf8 {

// Decodes the code point starting at text[pos]. Invalid or truncated
// sequences decode as the single byte value (Latin-1 fallback) with length 1,
// so decoding never fails and always advances.
struct Decoded {
  char32_t cp;
  size_t length;
};
Decoded decode(std::string_view text, size_t pos);

void append(std::string& out, char32_t cp);
std::string encode(char32_t cp);

size_t count_code_points(std::string_view text);

}  // namespace scopeit::utf8

#endif  // SCOPEIT_COMMON_UTF8_H_
