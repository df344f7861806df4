// Copyright 2026 The orthsvd Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "orthsvd/harness/format.hpp"

#include <charconv>
#include <sstream>
#include <system_error>

namespace orthsvd {

std::string FormatShortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string FormatDigits(double v, int digits) {
  if (digits <= 0) return FormatShortest(v);
  char buf[128];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

std::string FormatList(const Vector<double>& v, int digits) {
  std::string out = "[";
  for (Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += FormatDigits(v(i), digits);
  }
  return out + "]";
}

std::vector<long long> ParseIntList(const std::string& text) {
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    long long value = 0;
    const char* first = item.data();
    const char* last = item.data() + item.size();
    while (first < last && *first == ' ') ++first;
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) {
      throw Error(ErrorCode::kConfigError, "not an integer: '" + item + "'");
    }
    out.push_back(value);
  }
  if (out.empty()) throw Error(ErrorCode::kConfigError, "empty list");
  return out;
}

}  // namespace orthsvd
