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

#include "text_io.hpp"

#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace shortmol {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = fnv1a64(bytes);
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xF];
    h >>= 4;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw ConfigError("failed to write '" + path + "'");
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

void CsvDoc::meta(std::string_view key, std::string_view value) {
  buf_.append("# ");
  buf_.append(key);
  buf_.append(": ");
  buf_.append(value);
  buf_.push_back('\n');
}

void CsvDoc::columns(std::initializer_list<std::string_view> names) {
  bool first = true;
  for (auto n : names) {
    if (!first) buf_.push_back(',');
    buf_.append(n);
    first = false;
  }
  buf_.push_back('\n');
}

CsvDoc::Row& CsvDoc::Row::cell(std::string_view v) {
  if (!first_) doc_.buf_.push_back(',');
  doc_.buf_.append(v);
  first_ = false;
  return *this;
}

CsvDoc::Row& CsvDoc::Row::cell(double v) { return cell(std::string_view(format_double(v))); }

CsvDoc::Row& CsvDoc::Row::cell(std::int64_t v) { return cell(std::string_view(std::to_string(v))); }

CsvDoc::Row& CsvDoc::Row::cell(std::uint64_t v) { return cell(std::string_view(std::to_string(v))); }

CsvDoc::Row& CsvDoc::Row::cell(int v) { return cell(std::string_view(std::to_string(v))); }

CsvDoc::Row& CsvDoc::Row::cell(bool v) { return cell(std::string_view(v ? "true" : "false")); }

CsvDoc::Row::~Row() { doc_.buf_.push_back('\n'); }

}  // namespace shortmol
