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

// Timing of the closed form against the Jacobi oracle on Haar instances.

#ifndef ORTHSVD_HARNESS_BENCH_HPP_
#define ORTHSVD_HARNESS_BENCH_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orthsvd/core.hpp"

namespace orthsvd {

inline constexpr double kBenchAgreementTol = 1e-8;

inline constexpr const char* kMethodSpectrum = "closed_form_spectrum";
inline constexpr const char* kMethodFullSvd = "closed_form_svd";
inline constexpr const char* kMethodJacobi = "jacobi_svd";

struct BenchConfig {
  std::vector<Index> dims{2, 8, 32, 64};
  std::uint64_t trials = 100;  // instances per dim
  std::uint64_t seed = 1;
  // Each measurement repeats a call until at least this long has elapsed.
  double min_sample_seconds = 2e-5;

  void Validate() const;
};

struct BenchRow {
  Index dim = 0;
  std::string method;
  double median_ns = 0;
  std::uint64_t trials = 0;
};

struct BenchReport {
  BenchConfig config;
  std::vector<BenchRow> rows;
  // Largest |closed form - Jacobi| singular value gap seen while checking.
  double max_disagreement = 0;
  std::uint64_t disagreements = 0;

  bool passed() const { return disagreements == 0; }
  /// median(jacobi) / median(method) at `dim`, if both were measured.
  std::optional<double> Speedup(Index dim, const std::string& method) const;
};

/// Seed of instance `i` at dimension `dim`: Haar Q, Gaussian a and b.
std::uint64_t BenchInstanceSeed(std::uint64_t seed, Index dim,
                                std::uint64_t i);

BenchReport RunBench(const BenchConfig& cfg);

/// "dim,method,median_ns,trials" followed by one line per row.
std::string BenchToCsv(const BenchReport& r);
std::string BenchToText(const BenchReport& r);

}  // namespace orthsvd

#endif  // ORTHSVD_HARNESS_BENCH_HPP_
