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

// Seeded verification campaigns: sample instances, run the closed form,
// check every identity it should satisfy, and compare against the Jacobi
// oracle.

#ifndef ORTHSVD_HARNESS_CAMPAIGN_HPP_
#define ORTHSVD_HARNESS_CAMPAIGN_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "orthsvd/closed_form.hpp"
#include "orthsvd/oracle.hpp"

namespace orthsvd {

struct Tolerances {
  double theorem = 1e-10;         // relative to max(1, ||a|| ||b||)
  double oracle = 1e-8;           // absolute, per singular value
  double reconstruction = 1e-9;   // relative to max(1, ||A||_F); also U, V
};

// Fixed thresholds for the secondary identities.
inline constexpr double kProductIdentityTol = 1e-10;    // relative
inline constexpr double kRankRevelationTol = 1e-10;     // x max(1, t^2)
inline constexpr double kEigenResidualTol = 1e-9;       // x max(1, lambda1)
inline constexpr double kSingularGammaTol = 1e-12;      // |1 + gamma|
inline constexpr double kSingularSigmaTol = 1e-10;      // sigma_n

struct CampaignConfig {
  std::uint64_t trials = 100;  // per (dim, q_mode, vector_mode) cell
  std::vector<Index> dims{2, 3, 8};
  std::vector<QMode> q_modes{QMode::kIdentity};
  std::vector<VectorMode> vector_modes{VectorMode::kGaussian};
  double epsilon = 1e-7;
  double scale_lo = 1e-3;
  double scale_hi = 1e3;
  std::uint64_t seed = 1;
  Tolerances tol;
  Index oracle_cutoff = 64;
  double parallel_tol = kDefaultParallelTol;
  unsigned threads = 1;

  void Validate() const;
};

/// Identifies one trial; `seed` alone reproduces the instance given the
/// distribution fields.
struct TrialSpec {
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
  Index dim = 2;
  QMode q_mode = QMode::kIdentity;
  VectorMode vector_mode = VectorMode::kGaussian;
};

struct TrialRecord {
  TrialSpec spec;
  Branch branch = Branch::kZeroVector;
  double norm_product = 0;         // ||a|| ||b||
  double one_plus_gamma = 1;
  double sigma_max = 1;
  double sigma_min = 1;
  bool theorem_applicable = true;  // n >= 2
  double theorem_residual = 0;     // / max(1, ||a|| ||b||)
  double theorem_residual_flipped = 0;  // with the opposite sign term
  double product_identity = 0;     // relative error (n >= 2)
  std::optional<double> rank_revelation;  // / max(1, t^2)
  double eigen_residual = 0;       // max over pairs, / max(1, lambda1)
  double reconstruction = 0;       // / max(1, ||A||_F)
  double orthonormality = 0;       // max(defect(U), defect(V))
  std::optional<double> oracle_deviation;
  std::vector<std::string> failures;
  // Seconds, excluded from deterministic output.
  double time_sample = 0, time_closed_form = 0, time_checks = 0,
         time_oracle = 0;
};

struct FailureRecord {
  TrialSpec spec;
  std::vector<std::string> reasons;
  double theorem_residual = 0;
  double reconstruction = 0;
  std::optional<double> oracle_deviation;
};

struct CampaignReport {
  CampaignConfig config;
  std::uint64_t total_trials = 0;
  std::array<std::uint64_t, 3> branch_counts{};  // indexed by Branch
  double theorem_residual_max = 0;
  double theorem_residual_mean = 0;
  double product_identity_max = 0;
  double eigen_residual_max = 0;
  double reconstruction_max = 0;
  double orthonormality_max = 0;
  std::uint64_t rank_revelation_checks = 0;
  double rank_revelation_max = 0;
  std::uint64_t oracle_comparisons = 0;
  double oracle_deviation_max = 0;
  // Trials with |1 + gamma| <= kSingularGammaTol.
  std::uint64_t singular_trials = 0;
  double singular_sigma_min_max = 0;
  double singular_theorem_residual_max = 0;  // worst of both sign choices
  std::vector<FailureRecord> failures;
  double time_sample = 0, time_closed_form = 0, time_checks = 0,
         time_oracle = 0, time_wall = 0;

  std::uint64_t branch_count(Branch b) const {
    return branch_counts[static_cast<int>(b)];
  }
  bool passed() const { return failures.empty(); }
};

std::uint64_t TrialSeed(std::uint64_t campaign_seed, Index dim, QMode q,
                        VectorMode v, std::uint64_t index);

InstanceDistribution DistributionFor(const CampaignConfig& cfg,
                                     const TrialSpec& spec);

/// Runs every check on one instance. Never throws for numerical trouble;
/// problems are recorded in `failures`.
TrialRecord RunTrial(const CampaignConfig& cfg, const TrialSpec& spec);

/// Enumerates all trials of `cfg` in a fixed order.
std::vector<TrialSpec> EnumerateTrials(const CampaignConfig& cfg);

/// Reduces records in index order; identical for any thread count.
CampaignReport Summarize(const CampaignConfig& cfg,
                         const std::vector<TrialRecord>& records);

CampaignReport RunCampaign(const CampaignConfig& cfg);

nlohmann::json ReportToJson(const CampaignReport& report, bool with_timing);
std::string ReportToText(const CampaignReport& report);

}  // namespace orthsvd

#endif  // ORTHSVD_HARNESS_CAMPAIGN_HPP_
