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

#ifndef ORTHSVD_HARNESS_FORMAT_HPP_
#define ORTHSVD_HARNESS_FORMAT_HPP_

#include <string>
#include <vector>

#include "orthsvd/core.hpp"

namespace orthsvd {

/// Shortest decimal string that parses back to exactly `v`.
std::string FormatShortest(double v);

/// `digits` significant digits; digits <= 0 falls back to FormatShortest.
std::string FormatDigits(double v, int digits);

/// "[v0, v1, ...]" with FormatDigits applied to each entry.
std::string FormatList(const Vector<double>& v, int digits);

/// Parses "2,3,8" into {2, 3, 8}. Throws kConfigError on junk.
std::vector<long long> ParseIntList(const std::string& text);

}  // namespace orthsvd

#endif  // ORTHSVD_HARNESS_FORMAT_HPP_
