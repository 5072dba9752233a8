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

#ifndef SCOPEIT_COMMON_IO_H_
#define SCOPEIT_COMMON_IO_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace scopeit {

// Whole-file helpers. Both throw scopeit::Error on I/O failure.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

// Append-only little-endian encoder for the binary file formats.
class ByteWriter {
 public:
  void u8(uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(uint32_t v);
  void u64(uint64_t v);
  void f32(float v);
  void bytes(std::string_view b) { out_.append(b); }
  // u32 length prefix followed by the raw bytes.
  void str(std::string_view s);

  const std::string& data() const { return out_; }
  std::string release() { return std::move(out_); }

 private:
  std::string out_;
};

// Bounds-checked little-endian decoder. Throws FormatError on truncation.
class ByteReader {
 public:
  explicit ByteReader(std::string_view data) : data_(data) {}

  uint8_t u8();
  uint32_t u32();
  uint64_t u64();
  float f32();
  std::string_view bytes(size_t n);
  std::string str();
  void f32s(float* dst, size_t n);

  bool done() const { return pos_ == data_.size(); }
  size_t position() const { return pos_; }

 private:
  void need(size_t n) const;

  std::string_view data_;
  size_t pos_ = 0;
};

}  // namespace scopeit

#endif  // SCOPEIT_COMMON_IO_H_
