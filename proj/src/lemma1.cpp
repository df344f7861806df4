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

#include "orthsvd/harness/lemma1.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "orthsvd/closed_form.hpp"
#include "orthsvd/harness/format.hpp"
#include "orthsvd/oracle.hpp"

namespace orthsvd {
namespace {

ForcedCase RunForced(const std::string& name, const Vector<double>& x,
                     const Vector<double>& y) {
  ForcedCase fc;
  fc.name = name;
  const auto gap = ComputeLemmaGap(x, y);
  fc.upper_slack = gap.upper_slack;
  fc.lower_slack = gap.lower_slack;
  const double xy2 = (x + y).squaredNorm();
  const double cross = y.norm() * (2.0 * x + y).norm();
  fc.direct_upper = xy2 + cross - 1.0;
  fc.direct_lower = 1.0 - xy2 + cross;
  fc.ok = std::abs(fc.upper_slack - fc.direct_upper) <= kLemmaForcedTol &&
          std::abs(fc.lower_slack - fc.direct_lower) <= kLemmaForcedTol &&
          fc.upper_slack >= -kLemmaSlackTol &&
          fc.lower_slack >= -kLemmaSlackTol;
  return fc;
}

}  // namespace

void LemmaSweepConfig::Validate() const {
  if (trials < 1) throw Error(ErrorCode::kConfigError, "trials must be >= 1");
  if (dims.empty()) throw Error(ErrorCode::kConfigError, "dims must be nonempty");
  for (Index d : dims) {
    if (d < 1) throw Error(ErrorCode::kConfigError, "every dim must be >= 1");
  }
  if (!(y_norm_lo > 0) || !(y_norm_hi >= y_norm_lo)) {
    throw Error(ErrorCode::kConfigError, "||y|| range must be positive");
  }
}

bool LemmaSweepReport::passed() const {
  return violations == 0 &&
         std::all_of(forced.begin(), forced.end(),
                     [](const ForcedCase& f) { return f.ok; });
}

void SampleLemmaPair(Index dim, double y_lo, double y_hi, std::uint64_t seed,
                     Vector<double>& x, Vector<double>& y) {
  Rng rng(seed);
  x = rng.UnitVector(dim);
  const double y_norm = rng.LogUniform(y_lo, y_hi);
  const double pick = rng.Uniform();
  Vector<double> dir;
  if (pick < 0.5 || dim == 1) {
    dir = rng.UnitVector(dim);
  } else {
    const double anchor = pick < 0.75 ? -1.0 : -2.0;
    const double spread = rng.LogUniform(1e-12, 1.0);
    dir = anchor * x + spread * rng.UnitVector(dim);
    dir.normalize();
  }
  y = y_norm * dir;
}

LemmaSweepReport RunLemmaSweep(const LemmaSweepConfig& cfg) {
  cfg.Validate();
  const auto start = std::chrono::steady_clock::now();
  LemmaSweepReport r;
  r.config = cfg;
  r.min_upper_slack = std::numeric_limits<double>::infinity();
  r.min_lower_slack = std::numeric_limits<double>::infinity();
  double worst = std::numeric_limits<double>::infinity();
  Vector<double> x, y;
  for (std::uint64_t i = 0; i < cfg.trials; ++i) {
    const Index dim = cfg.dims[i % cfg.dims.size()];
    const std::uint64_t seed =
        MixSeeds(MixSeeds(cfg.seed, static_cast<std::uint64_t>(dim)), i);
    SampleLemmaPair(dim, cfg.y_norm_lo, cfg.y_norm_hi, seed, x, y);
    const auto gap = ComputeLemmaGap(x, y);
    ++r.trials;
    r.min_upper_slack = std::min(r.min_upper_slack, gap.upper_slack);
    r.min_lower_slack = std::min(r.min_lower_slack, gap.lower_slack);
    const double low = std::min(gap.upper_slack, gap.lower_slack);
    if (low < worst) {
      worst = low;
      r.worst_seed = seed;
    }
    if (gap.upper_slack < -kLemmaSlackTol || gap.lower_slack < -kLemmaSlackTol) {
      ++r.violations;
    }
  }

  const Vector<double> e = Vector<double>::Unit(3, 0);
  r.forced.push_back(RunForced("y=0", e, Vector<double>::Zero(3)));
  r.forced.push_back(RunForced("y=-2x", e, -2.0 * e));
  r.forced.push_back(RunForced("y=-x", e, -e));
  r.time_wall = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return r;
}

nlohmann::json LemmaReportToJson(const LemmaSweepReport& r, bool with_timing) {
  using nlohmann::json;
  json out;
  out["config"] = {{"trials", r.config.trials},
                   {"dims", r.config.dims},
                   {"y_norm_range", {r.config.y_norm_lo, r.config.y_norm_hi}},
                   {"seed", r.config.seed}};
  out["trials"] = r.trials;
  out["violations"] = r.violations;
  out["min_upper_slack"] = r.min_upper_slack;
  out["min_lower_slack"] = r.min_lower_slack;
  out["worst_seed"] = r.worst_seed;
  json forced = json::array();
  for (const auto& f : r.forced) {
    forced.push_back({{"name", f.name},
                      {"upper_slack", f.upper_slack},
                      {"lower_slack", f.lower_slack},
                      {"direct_upper", f.direct_upper},
                      {"direct_lower", f.direct_lower},
                      {"ok", f.ok}});
  }
  out["forced"] = forced;
  out["passed"] = r.passed();
  if (with_timing) out["timing_seconds"] = {{"wall", r.time_wall}};
  return out;
}

std::string LemmaReportToText(const LemmaSweepReport& r) {
  std::ostringstream os;
  os << "trials           " << r.trials << "\n"
     << "violations       " << r.violations << " (slack < -1e-12)\n"
     << "min upper slack  " << FormatDigits(r.min_upper_slack, 6) << "\n"
     << "min lower slack  " << FormatDigits(r.min_lower_slack, 6) << "\n"
     << "worst seed       " << r.worst_seed << "\n";
  for (const auto& f : r.forced) {
    os << "forced " << f.name << "  upper=" << FormatDigits(f.upper_slack, 6)
       << " lower=" << FormatDigits(f.lower_slack, 6)
       << " direct_upper=" << FormatDigits(f.direct_upper, 6)
       << " direct_lower=" << FormatDigits(f.direct_lower, 6)
       << (f.ok ? " ok" : " MISMATCH") << "\n";
  }
  os << "time (s)         " << FormatDigits(r.time_wall, 4) << "\n"
     << (r.passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace orthsvd
