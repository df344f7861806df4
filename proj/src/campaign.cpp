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

#include "orthsvd/harness/campaign.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include "orthsvd/harness/format.hpp"

namespace orthsvd {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void Check(TrialRecord& rec, bool ok, const std::string& what, double value,
           double limit) {
  if (ok) return;
  rec.failures.push_back(what + " = " + FormatShortest(value) + " > " +
                         FormatShortest(limit));
}

}  // namespace

void CampaignConfig::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kConfigError, what);
  };
  if (trials < 1) fail("trials must be >= 1");
  if (dims.empty()) fail("dims must be nonempty");
  if (q_modes.empty() || vector_modes.empty()) fail("modes must be nonempty");
  for (Index d : dims) {
    if (d < 1) fail("every dim must be >= 1");
  }
  if (!(tol.theorem > 0) || !(tol.oracle > 0) || !(tol.reconstruction > 0)) {
    fail("tolerances must be > 0");
  }
  if (!(parallel_tol >= 0)) fail("parallel tolerance must be >= 0");
  if (threads < 1) fail("threads must be >= 1");
  for (Index d : dims) {
    for (QMode q : q_modes) {
      for (VectorMode v : vector_modes) {
        InstanceDistribution dist;
        dist.dim = d;
        dist.q_mode = q;
        dist.vector_mode = v;
        dist.epsilon = epsilon;
        dist.scale_lo = scale_lo;
        dist.scale_hi = scale_hi;
        dist.Validate();
      }
    }
  }
}

std::uint64_t TrialSeed(std::uint64_t campaign_seed, Index dim, QMode q,
                        VectorMode v, std::uint64_t index) {
  std::uint64_t s = MixSeeds(campaign_seed, static_cast<std::uint64_t>(dim));
  s = MixSeeds(s, static_cast<std::uint64_t>(q) * 16 +
                      static_cast<std::uint64_t>(v));
  return MixSeeds(s, index);
}

InstanceDistribution DistributionFor(const CampaignConfig& cfg,
                                     const TrialSpec& spec) {
  InstanceDistribution dist;
  dist.dim = spec.dim;
  dist.q_mode = spec.q_mode;
  dist.vector_mode = spec.vector_mode;
  dist.epsilon = cfg.epsilon;
  dist.scale_lo = cfg.scale_lo;
  dist.scale_hi = cfg.scale_hi;
  return dist;
}

std::vector<TrialSpec> EnumerateTrials(const CampaignConfig& cfg) {
  std::vector<TrialSpec> out;
  std::uint64_t index = 0;
  for (Index d : cfg.dims) {
    for (QMode q : cfg.q_modes) {
      for (VectorMode v : cfg.vector_modes) {
        for (std::uint64_t k = 0; k < cfg.trials; ++k) {
          TrialSpec s;
          s.index = index++;
          s.seed = TrialSeed(cfg.seed, d, q, v, k);
          s.dim = d;
          s.q_mode = q;
          s.vector_mode = v;
          out.push_back(s);
        }
      }
    }
  }
  return out;
}

TrialRecord RunTrial(const CampaignConfig& cfg, const TrialSpec& spec) {
  TrialRecord rec;
  rec.spec = spec;
  try {
    auto start = Clock::now();
    const auto m = SampleInstance(DistributionFor(cfg, spec), spec.seed);
    rec.time_sample = SecondsSince(start);

    start = Clock::now();
    const auto sp = ComputeSpectrum(m, cfg.parallel_tol);
    const auto svd = ComputeFullSvd(m, cfg.parallel_tol);
    const auto pairs = ComputeSpecialEigenpairs(m, cfg.parallel_tol);
    rec.time_closed_form = SecondsSince(start);

    start = Clock::now();
    const Matrix<double> a = Materialize(m);
    const double t = sp.scalars.product();
    const double p = 1.0 + sp.scalars.gamma;
    rec.branch = sp.branch;
    rec.norm_product = t;
    rec.one_plus_gamma = p;
    rec.sigma_max = sp.sigma_max;
    rec.sigma_min = sp.sigma_min;

    const double t_scale = std::max(1.0, t);
    rec.theorem_applicable = m.dim() >= 2;
    rec.theorem_residual = TheoremResidual(sp) / t_scale;
    rec.theorem_residual_flipped =
        std::abs(sp.sigma_max + sp.sign_term * sp.sigma_min - t) / t_scale;
    if (rec.theorem_applicable) {
      Check(rec, rec.theorem_residual <= cfg.tol.theorem, "theorem_residual",
            rec.theorem_residual, cfg.tol.theorem);
    }

    const double product = sp.sigma_max * std::sqrt(sp.lambda2);
    rec.product_identity =
        std::abs(p) > 0 ? std::abs(product - std::abs(p)) / std::abs(p)
                        : std::abs(product);
    if (rec.theorem_applicable) {
      Check(rec, rec.product_identity <= kProductIdentityTol,
            "product_identity", rec.product_identity, kProductIdentityTol);
    }

    if (m.is_identity() && sp.scalars.alpha > 0 && sp.scalars.beta > 0) {
      rec.rank_revelation =
          RankRevelationResidual(m) / std::max(1.0, t * t);
      Check(rec, *rec.rank_revelation <= kRankRevelationTol,
            "rank_revelation", *rec.rank_revelation, kRankRevelationTol);
    }

    for (const auto& pair : pairs) {
      const Vector<double> av = a * pair.v;
      const double r = (a.transpose() * av - pair.lambda * pair.v).norm() /
                       std::max(1.0, sp.lambda1);
      rec.eigen_residual = std::max(rec.eigen_residual, r);
    }
    Check(rec, rec.eigen_residual <= kEigenResidualTol, "eigen_residual",
          rec.eigen_residual, kEigenResidualTol);

    rec.reconstruction =
        ReconstructionError(a, svd) / std::max(1.0, a.norm());
    rec.orthonormality =
        std::max(OrthogonalityDefect(svd.u), OrthogonalityDefect(svd.v));
    Check(rec, rec.reconstruction <= cfg.tol.reconstruction, "reconstruction",
          rec.reconstruction, cfg.tol.reconstruction);
    Check(rec, rec.orthonormality <= cfg.tol.reconstruction, "orthonormality",
          rec.orthonormality, cfg.tol.reconstruction);
    bool sorted = true;
    for (Index i = 1; i < svd.sigma.size(); ++i) {
      sorted = sorted && svd.sigma(i - 1) >= svd.sigma(i);
    }
    if (!sorted) rec.failures.push_back("sigma not sorted nonincreasing");

    if (std::abs(p) <= kSingularGammaTol && rec.theorem_applicable) {
      Check(rec, sp.sigma_min <= kSingularSigmaTol, "singular sigma_min",
            sp.sigma_min, kSingularSigmaTol);
      Check(rec, rec.theorem_residual_flipped <= cfg.tol.theorem,
            "theorem_residual(opposite sign)", rec.theorem_residual_flipped,
            cfg.tol.theorem);
    }
    rec.time_checks = SecondsSince(start);

    if (m.dim() <= cfg.oracle_cutoff) {
      start = Clock::now();
      try {
        const auto oracle = JacobiSvd(a);
        rec.oracle_deviation =
            (oracle.sigma - svd.sigma).cwiseAbs().maxCoeff();
        Check(rec, *rec.oracle_deviation <= cfg.tol.oracle,
              "oracle_deviation", *rec.oracle_deviation, cfg.tol.oracle);
      } catch (const Error& e) {
        rec.failures.push_back(std::string("oracle: ") + e.what());
      }
      rec.time_oracle = SecondsSince(start);
    }
  } catch (const Error& e) {
    rec.failures.push_back(std::string(ErrorCodeName(e.code())) + ": " +
                           e.what());
  }
  return rec;
}

CampaignReport Summarize(const CampaignConfig& cfg,
                         const std::vector<TrialRecord>& records) {
  CampaignReport r;
  r.config = cfg;
  r.total_trials = records.size();
  double theorem_sum = 0;
  std::uint64_t theorem_count = 0;
  for (const auto& rec : records) {
    ++r.branch_counts[static_cast<int>(rec.branch)];
    if (rec.theorem_applicable) {
      r.theorem_residual_max =
          std::max(r.theorem_residual_max, rec.theorem_residual);
      theorem_sum += rec.theorem_residual;
      r.product_identity_max =
          std::max(r.product_identity_max, rec.product_identity);
      ++theorem_count;
    }
    r.eigen_residual_max = std::max(r.eigen_residual_max, rec.eigen_residual);
    r.reconstruction_max = std::max(r.reconstruction_max, rec.reconstruction);
    r.orthonormality_max = std::max(r.orthonormality_max, rec.orthonormality);
    if (rec.rank_revelation) {
      ++r.rank_revelation_checks;
      r.rank_revelation_max =
          std::max(r.rank_revelation_max, *rec.rank_revelation);
    }
    if (rec.oracle_deviation) {
      ++r.oracle_comparisons;
      r.oracle_deviation_max =
          std::max(r.oracle_deviation_max, *rec.oracle_deviation);
    }
    if (std::abs(rec.one_plus_gamma) <= kSingularGammaTol &&
        rec.theorem_applicable) {
      ++r.singular_trials;
      r.singular_sigma_min_max =
          std::max(r.singular_sigma_min_max, rec.sigma_min);
      r.singular_theorem_residual_max =
          std::max({r.singular_theorem_residual_max, rec.theorem_residual,
                    rec.theorem_residual_flipped});
    }
    if (!rec.failures.empty()) {
      r.failures.push_back({rec.spec, rec.failures, rec.theorem_residual,
                            rec.reconstruction, rec.oracle_deviation});
    }
    r.time_sample += rec.time_sample;
    r.time_closed_form += rec.time_closed_form;
    r.time_checks += rec.time_checks;
    r.time_oracle += rec.time_oracle;
  }
  r.theorem_residual_mean =
      theorem_count > 0 ? theorem_sum / static_cast<double>(theorem_count) : 0;
  return r;
}

CampaignReport RunCampaign(const CampaignConfig& cfg) {
  cfg.Validate();
  const auto start = Clock::now();
  const std::vector<TrialSpec> specs = EnumerateTrials(cfg);
  std::vector<TrialRecord> records(specs.size());
  const unsigned workers = std::max(
      1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(specs.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < specs.size(); ++i) {
      records[i] = RunTrial(cfg, specs[i]);
    }
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < specs.size(); i += workers) {
          records[i] = RunTrial(cfg, specs[i]);
        }
      });
    }
  }
  CampaignReport report = Summarize(cfg, records);
  report.time_wall = SecondsSince(start);
  return report;
}

nlohmann::json ReportToJson(const CampaignReport& r, bool with_timing) {
  using nlohmann::json;
  const CampaignConfig& c = r.config;
  json cfg;
  cfg["trials"] = c.trials;
  cfg["dims"] = c.dims;
  json qm = json::array(), vm = json::array();
  for (QMode q : c.q_modes) qm.push_back(QModeName(q));
  for (VectorMode v : c.vector_modes) vm.push_back(VectorModeName(v));
  cfg["q_modes"] = qm;
  cfg["vector_modes"] = vm;
  cfg["epsilon"] = c.epsilon;
  cfg["scale_range"] = {c.scale_lo, c.scale_hi};
  cfg["seed"] = c.seed;
  cfg["tolerances"] = {{"theorem", c.tol.theorem},
                       {"oracle", c.tol.oracle},
                       {"reconstruction", c.tol.reconstruction}};
  cfg["oracle_cutoff"] = c.oracle_cutoff;
  cfg["parallel_tol"] = c.parallel_tol;

  json out;
  out["config"] = cfg;
  out["total_trials"] = r.total_trials;
  out["branch_counts"] = {
      {"zero_vector", r.branch_count(Branch::kZeroVector)},
      {"parallel", r.branch_count(Branch::kParallel)},
      {"non_parallel", r.branch_count(Branch::kNonParallel)}};
  out["theorem_residual"] = {{"max", r.theorem_residual_max},
                             {"mean", r.theorem_residual_mean}};
  out["product_identity_max"] = r.product_identity_max;
  out["eigen_residual_max"] = r.eigen_residual_max;
  out["reconstruction_max"] = r.reconstruction_max;
  out["orthonormality_max"] = r.orthonormality_max;
  out["rank_revelation"] = {{"checks", r.rank_revelation_checks},
                            {"max", r.rank_revelation_max}};
  out["oracle"] = {{"comparisons", r.oracle_comparisons},
                   {"max_deviation", r.oracle_deviation_max}};
  out["singular"] = {{"trials", r.singular_trials},
                     {"sigma_min_max", r.singular_sigma_min_max},
                     {"theorem_residual_max", r.singular_theorem_residual_max}};
  json failures = json::array();
  for (const auto& f : r.failures) {
    json j;
    j["index"] = f.spec.index;
    j["seed"] = f.spec.seed;
    j["dim"] = f.spec.dim;
    j["q_mode"] = QModeName(f.spec.q_mode);
    j["vector_mode"] = VectorModeName(f.spec.vector_mode);
    j["reasons"] = f.reasons;
    j["theorem_residual"] = f.theorem_residual;
    j["reconstruction"] = f.reconstruction;
    j["oracle_deviation"] =
        f.oracle_deviation ? json(*f.oracle_deviation) : json(nullptr);
    failures.push_back(j);
  }
  out["failures"] = failures;
  out["passed"] = r.passed();
  if (with_timing) {
    out["timing_seconds"] = {{"sample", r.time_sample},
                             {"closed_form", r.time_closed_form},
                             {"checks", r.time_checks},
                             {"oracle", r.time_oracle},
                             {"wall", r.time_wall}};
  }
  return out;
}

std::string ReportToText(const CampaignReport& r) {
  std::ostringstream os;
  auto num = [](double v) { return FormatDigits(v, 4); };
  os << "trials                 " << r.total_trials << "\n"
     << "branches               zero_vector=" << r.branch_count(Branch::kZeroVector)
     << " parallel=" << r.branch_count(Branch::kParallel)
     << " non_parallel=" << r.branch_count(Branch::kNonParallel) << "\n"
     << "theorem residual       max=" << num(r.theorem_residual_max)
     << " mean=" << num(r.theorem_residual_mean) << "\n"
     << "product identity       max=" << num(r.product_identity_max) << "\n"
     << "eigen residual         max=" << num(r.eigen_residual_max) << "\n"
     << "reconstruction         max=" << num(r.reconstruction_max) << "\n"
     << "orthonormality         max=" << num(r.orthonormality_max) << "\n"
     << "rank revelation        checks=" << r.rank_revelation_checks
     << " max=" << num(r.rank_revelation_max) << "\n"
     << "oracle                 comparisons=" << r.oracle_comparisons
     << " max_deviation=" << num(r.oracle_deviation_max) << "\n"
     << "singular (|1+g|<=1e-12) trials=" << r.singular_trials
     << " sigma_min_max=" << num(r.singular_sigma_min_max)
     << " theorem_max=" << num(r.singular_theorem_residual_max) << "\n"
     << "time (s)               sample=" << num(r.time_sample)
     << " closed_form=" << num(r.time_closed_form)
     << " checks=" << num(r.time_checks) << " oracle=" << num(r.time_oracle)
     << " wall=" << num(r.time_wall) << "\n"
     << "failures               " << r.failures.size() << "\n";
  for (const auto& f : r.failures) {
    os << "  seed=" << f.spec.seed << " dim=" << f.spec.dim
       << " q_mode=" << QModeName(f.spec.q_mode)
       << " vector_mode=" << VectorModeName(f.spec.vector_mode) << ":";
    for (const auto& reason : f.reasons) os << " [" << reason << "]";
    os << "\n";
  }
  os << (r.passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace orthsvd
