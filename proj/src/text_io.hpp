// Copyright 2026 The shortmol Authors
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

#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

namespace shortmol {

// Shortest round-trip decimal representation; stable across runs.
std::string format_double(double v);

std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

std::string read_file(const std::string& path);

// Whole-buffer write; an output file either appears complete or not at all.
void write_file(const std::string& path, std::string_view content);

std::string utc_timestamp();

// CSV output with '#'-prefixed metadata lines. Rows are assembled in memory
// and flushed in one write.
class CsvDoc {
 public:
  void meta(std::string_view key, std::string_view value);
  void columns(std::initializer_list<std::string_view> names);

  class Row {
   public:
    explicit Row(CsvDoc& doc) : doc_(doc) {}
    Row& cell(std::string_view v);
    // Keeps string literals away from the bool overload.
    Row& cell(const char* v) { return cell(std::string_view(v)); }
    Row& cell(double v);
    Row& cell(std::int64_t v);
    Row& cell(std::uint64_t v);
    Row& cell(int v);
    Row& cell(bool v);
    ~Row();

   private:
    CsvDoc& doc_;
    bool first_ = true;
  };

  Row row() { return Row(*this); }

  const std::string& str() const { return buf_; }

 private:
  friend class Row;
  std::string buf_;
};

}  // namespace shortmol
