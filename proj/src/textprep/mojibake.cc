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

#include "scopeit/textprep/mojibake.h"

#include <array>
#include <unordered_map>

#include "scopeit/common/utf8.h"

namespace scopeit::textprep {
namespace {

// Windows-1252 assignments for 0x80-0x9f. Zero marks bytes the code page
// leaves undefined; those decode as the C1 control of the same value.
constexpr std::array<char32_t, 32> kCp1252High = {
    0x20ac, 0,      0x201a, 0x0192, 0x201e, 0x2026, 0x2020, 0x2021,
    0x02c6, 0x2030, 0x0160, 0x2039, 0x0152, 0,      0x017d, 0,
    0,      0x2018, 0x2019, 0x201c, 0x201d, 0x2022, 0x2013, 0x2014,
    0x02dc, 0x2122, 0x0161, 0x203a, 0x0153, 0,      0x017e, 0x0178};

char32_t cp1252(unsigned char b) {
  if (b >= 0x80 && b < 0xa0 && kCp1252High[b - 0x80] != 0) {
    return kCp1252High[b - 0x80];
  }
  return b;
}

// Characters whose corruption the table repairs: the Latin-1 supplement
// (accented letters, NBSP, symbols) plus the Windows-1252 punctuation that
// shows up in mail (curly quotes, dashes, ellipsis, bullet, euro, trademark).
std::vector<char32_t> repaired_characters() {
  std::vector<char32_t> out;
  for (char32_t c = 0xa0; c <= 0xff; ++c) out.push_back(c);
  for (char32_t c : kCp1252High) {
    if (c != 0 && c > 0xff) out.push_back(c);
  }
  return out;
}

struct Table {
  std::vector<std::pair<std::string, std::string>> entries;
  std::unordered_map<std::string, std::string> lookup;
};

const Table& table() {
  static const Table t = [] {
    Table t;
    for (char32_t c : repaired_characters()) {
      std::string utf = utf8::encode(c);
      std::string as_cp1252;
      std::string as_latin1;
      for (unsigned char b : utf) {
        utf8::append(as_cp1252, cp1252(b));
        utf8::append(as_latin1, b);
      }
      t.entries.emplace_back(as_cp1252, utf);
      if (as_latin1 != as_cp1252) t.entries.emplace_back(as_latin1, utf);
    }
    for (const auto& [bad, good] : t.entries) t.lookup.emplace(bad, good);
    return t;
  }();
  return t;
}

// Lead characters of every corrupted form: the UTF-8 lead bytes 0xc2-0xc5,
// 0xc6, 0xcb and 0xe2 read as single characters.
bool is_lead(char32_t cp) {
  return (cp >= 0xc2 && cp <= 0xc6) || cp == 0xcb || cp == 0xe2;
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& mojibake_table() {
  return table().entries;
}

std::string repair_mojibake(std::string_view text) {
  const auto& lookup = table().lookup;
  std::string out;
  out.reserve(text.size());
  size_t pos = 0;
  while (pos < text.size()) {
    utf8::Decoded first = utf8::decode(text, pos);
    if (is_lead(first.cp)) {
      // Corrupted forms are two or three characters long; try three first.
      size_t ends[3] = {pos + first.length, 0, 0};
      for (int i = 1; i < 3 && ends[i - 1] < text.size(); ++i) {
        ends[i] = ends[i - 1] + utf8::decode(text, ends[i - 1]).length;
      }
      bool replaced = false;
      for (int i = 2; i >= 1 && !replaced; --i) {
        if (ends[i] == 0) continue;
        auto it = lookup.find(std::string(text.substr(pos, ends[i] - pos)));
        if (it != lookup.end()) {
          out += it->second;
          pos = ends[i];
          replaced = true;
        }
      }
      if (replaced) continue;
    }
    out.append(text.substr(pos, first.length));
    pos += first.length;
  }
  return out;
}

}  // namespace scopeit::textprep
