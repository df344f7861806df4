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

#include "orthsvd/harness/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "orthsvd/closed_form.hpp"
#include "orthsvd/harness/format.hpp"
#include "orthsvd/oracle.hpp"

namespace orthsvd {
namespace {

using Clock = std::chrono::steady_clock;

volatile double g_sink = 0;

// Nanoseconds per call, averaged over enough repetitions to reach
// min_seconds.
template <typename Fn>
double TimePerCall(Fn&& fn, double min_seconds) {
  std::uint64_t reps = 1;
  for (;;) {
    const auto start = Clock::now();
    for (std::uint64_t k = 0; k < reps; ++k) g_sink = g_sink + fn();
    const double elapsed =
        std::chrono::duration<double>(Clock::now() - start).count();
    if (elapsed >= min_seconds || reps >= (1u << 20)) {
      return elapsed * 1e9 / static_cast<double>(reps);
    }
    reps *= 2;
  }
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

void BenchConfig::Validate() const {
  if (dims.empty()) throw Error(ErrorCode::kConfigError, "dims must be nonempty");
  for (Index d : dims) {
    if (d < 1) throw Error(ErrorCode::kConfigError, "every dim must be >= 1");
  }
  if (trials < 1) throw Error(ErrorCode::kConfigError, "trials must be >= 1");
}

std::optional<double> BenchReport::Speedup(Index dim,
                                           const std::string& method) const {
  std::optional<double> base, target;
  for (const auto& row : rows) {
    if (row.dim != dim) continue;
    if (row.method == kMethodJacobi) base = row.median_ns;
    if (row.method == method) target = row.median_ns;
  }
  if (!base || !target || !(*target > 0)) return std::nullopt;
  return *base / *target;
}

std::uint64_t BenchInstanceSeed(std::uint64_t seed, Index dim,
                                std::uint64_t i) {
  return MixSeeds(MixSeeds(seed, static_cast<std::uint64_t>(dim)), i);
}

BenchReport RunBench(const BenchConfig& cfg) {
  cfg.Validate();
  BenchReport report;
  report.config = cfg;
  for (Index dim : cfg.dims) {
    InstanceDistribution dist;
    dist.dim = dim;
    dist.q_mode = QMode::kHaar;
    dist.vector_mode = VectorMode::kGaussian;
    std::vector<double> spectrum_ns, svd_ns, jacobi_ns;
    for (std::uint64_t i = 0; i < cfg.trials; ++i) {
      const auto m = SampleInstance(dist, BenchInstanceSeed(cfg.seed, dim, i));
      const Matrix<double> a = Materialize(m);

      const Vector<double> fast = ComputeSpectrum(m).SingularValues();
      const Vector<double> full = ComputeFullSvd(m).sigma;
      const Vector<double> slow = JacobiSvd(a).sigma;
      const double gap = std::max((fast - slow).cwiseAbs().maxCoeff(),
                                  (full - slow).cwiseAbs().maxCoeff());
      report.max_disagreement = std::max(report.max_disagreement, gap);
      if (!(gap <= kBenchAgreementTol)) ++report.disagreements;

      spectrum_ns.push_back(TimePerCall(
          [&] { return ComputeSpectrum(m).sigma_max; }, cfg.min_sample_seconds));
      svd_ns.push_back(TimePerCall(
          [&] { return ComputeFullSvd(m).sigma(0); }, cfg.min_sample_seconds));
      jacobi_ns.push_back(TimePerCall(
          [&] { return JacobiSvd(a).sigma(0); }, cfg.min_sample_seconds));
    }
    report.rows.push_back({dim, kMethodSpectrum, Median(spectrum_ns), cfg.trials});
    report.rows.push_back({dim, kMethodFullSvd, Median(svd_ns), cfg.trials});
    report.rows.push_back({dim, kMethodJacobi, Median(jacobi_ns), cfg.trials});
  }
  return report;
}

std::string BenchToCsv(const BenchReport& r) {
  std::ostringstream os;
  os << "dim,method,median_ns,trials\n";
  for (const auto& row : r.rows) {
    os << row.dim << "," << row.method << "," << FormatDigits(row.median_ns, 6)
       << "," << row.trials << "\n";
  }
  return os.str();
}

std::string BenchToText(const BenchReport& r) {
  std::ostringstream os;
  os << BenchToCsv(r);
  for (Index dim : r.config.dims) {
    for (const char* method : {kMethodSpectrum, kMethodFullSvd}) {
      if (auto s = r.Speedup(dim, method)) {
        os << "speedup n=" << dim << " " << method << " vs " << kMethodJacobi
           << ": " << FormatDigits(*s, 4) << "x\n";
      }
    }
  }
  os << "agreement: max |sigma - sigma_jacobi| = "
     << FormatDigits(r.max_disagreement, 3) << ", disagreements "
     << r.disagreements << "\n";
  return os.str();
}

}  // namespace orthsvd
