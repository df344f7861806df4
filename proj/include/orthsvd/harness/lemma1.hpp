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

// Randomized sweep of the norm inequality
//   ||x+y||^2 - ||y|| ||2x+y|| <= 1 <= ||x+y||^2 + ||y|| ||2x+y||
// for unit x, which orders the two special eigenvalues.

#ifndef ORTHSVD_HARNESS_LEMMA1_HPP_
#define ORTHSVD_HARNESS_LEMMA1_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "orthsvd/core.hpp"

namespace orthsvd {

inline constexpr double kLemmaSlackTol = 1e-12;
inline constexpr double kLemmaForcedTol = 1e-12;

struct LemmaSweepConfig {
  std::uint64_t trials = 100000;
  std::vector<Index> dims{1, 2, 3, 10, 100};
  double y_norm_lo = 1e-6;
  double y_norm_hi = 1e6;
  std::uint64_t seed = 1;

  void Validate() const;
};

// A hand-picked pair checked against direct evaluation of the two norms.
struct ForcedCase {
  std::string name;
  double upper_slack = 0;
  double lower_slack = 0;
  double direct_upper = 0;
  double direct_lower = 0;
  bool ok = false;
};

struct LemmaSweepReport {
  LemmaSweepConfig config;
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  double min_upper_slack = 0;
  double min_lower_slack = 0;
  std::uint64_t worst_seed = 0;  // trial seed of the smallest slack
  std::vector<ForcedCase> forced;
  double time_wall = 0;

  bool passed() const;
};

/// Draws (x, y) for one trial: x uniform on the sphere, ||y|| log-uniform,
/// and the direction of y either random or clustered near -x and -2x where
/// the inequality is tight.
void SampleLemmaPair(Index dim, double y_lo, double y_hi, std::uint64_t seed,
                     Vector<double>& x, Vector<double>& y);

LemmaSweepReport RunLemmaSweep(const LemmaSweepConfig& cfg);

nlohmann::json LemmaReportToJson(const LemmaSweepReport& r, bool with_timing);
std::string LemmaReportToText(const LemmaSweepReport& r);

}  // namespace orthsvd

#endif  // ORTHSVD_HARNESS_LEMMA1_HPP_
