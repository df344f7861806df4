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

#include "orthsvd/harness/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "orthsvd/closed_form.hpp"
#include "orthsvd/harness/bench.hpp"
#include "orthsvd/harness/campaign.hpp"
#include "orthsvd/harness/format.hpp"
#include "orthsvd/harness/instance_io.hpp"
#include "orthsvd/harness/lemma1.hpp"
#include "orthsvd/oracle.hpp"

namespace orthsvd {
namespace {

std::vector<std::string> SplitComma(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) {
      throw Error(ErrorCode::kConfigError, "empty item in '" + text + "'");
    }
    out.push_back(item);
  }
  if (out.empty()) throw Error(ErrorCode::kConfigError, "empty list");
  return out;
}

std::vector<Index> ParseDims(const std::string& text) {
  std::vector<Index> dims;
  for (long long d : ParseIntList(text)) dims.push_back(static_cast<Index>(d));
  return dims;
}

std::vector<QMode> ParseQModes(const std::string& text) {
  if (text == "all") return {std::begin(kAllQModes), std::end(kAllQModes)};
  std::vector<QMode> out;
  for (const auto& s : SplitComma(text)) out.push_back(ParseQMode(s));
  return out;
}

std::vector<VectorMode> ParseVectorModes(const std::string& text) {
  if (text == "all") {
    return {std::begin(kAllVectorModes), std::end(kAllVectorModes)};
  }
  std::vector<VectorMode> out;
  for (const auto& s : SplitComma(text)) out.push_back(ParseVectorMode(s));
  return out;
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kConfigError, "cannot open '" + path + "'");
  f << text;
  if (!f) throw Error(ErrorCode::kConfigError, "cannot write '" + path + "'");
}

void RequireFormat(const std::string& format) {
  if (format != "text" && format != "json") {
    throw Error(ErrorCode::kConfigError,
                "format must be 'text' or 'json', got '" + format + "'");
  }
}

// Prints to stdout, and to `path` when given, in the requested format.
void Emit(const std::string& text, const nlohmann::json& json,
          const std::string& format, const std::string& path,
          std::ostream& out) {
  const std::string body = format == "json" ? json.dump(2) + "\n" : text;
  out << body;
  if (!path.empty()) WriteFile(path, body);
}

struct VerifyArgs {
  std::uint64_t trials = 100;
  std::string dims = "2,3,8";
  std::string q_modes = "identity";
  std::string vector_modes = "gaussian";
  double epsilon = 1e-7;
  double scale_lo = 1e-3;
  double scale_hi = 1e3;
  std::uint64_t seed = 1;
  double tol_theorem = 1e-10;
  double tol_oracle = 1e-8;
  double tol_reconstruction = 1e-9;
  long long oracle_cutoff = 64;
  double parallel_tol = kDefaultParallelTol;
  unsigned threads = 1;
  std::string report;
  std::string format = "text";
  bool no_timing = false;
  std::optional<std::uint64_t> replay_seed;
};

CampaignConfig ToCampaignConfig(const VerifyArgs& a) {
  CampaignConfig cfg;
  cfg.trials = a.trials;
  cfg.dims = ParseDims(a.dims);
  cfg.q_modes = ParseQModes(a.q_modes);
  cfg.vector_modes = ParseVectorModes(a.vector_modes);
  cfg.epsilon = a.epsilon;
  cfg.scale_lo = a.scale_lo;
  cfg.scale_hi = a.scale_hi;
  cfg.seed = a.seed;
  cfg.tol = {a.tol_theorem, a.tol_oracle, a.tol_reconstruction};
  cfg.oracle_cutoff = static_cast<Index>(a.oracle_cutoff);
  cfg.parallel_tol = a.parallel_tol;
  cfg.threads = a.threads;
  cfg.Validate();
  return cfg;
}

nlohmann::json TrialToJson(const TrialRecord& r) {
  nlohmann::json j;
  j["seed"] = r.spec.seed;
  j["dim"] = r.spec.dim;
  j["q_mode"] = QModeName(r.spec.q_mode);
  j["vector_mode"] = VectorModeName(r.spec.vector_mode);
  j["branch"] = BranchName(r.branch);
  j["norm_product"] = r.norm_product;
  j["one_plus_gamma"] = r.one_plus_gamma;
  j["sigma_max"] = r.sigma_max;
  j["sigma_min"] = r.sigma_min;
  j["theorem_residual"] = r.theorem_residual;
  j["product_identity"] = r.product_identity;
  j["rank_revelation"] =
      r.rank_revelation ? nlohmann::json(*r.rank_revelation) : nullptr;
  j["eigen_residual"] = r.eigen_residual;
  j["reconstruction"] = r.reconstruction;
  j["orthonormality"] = r.orthonormality;
  j["oracle_deviation"] =
      r.oracle_deviation ? nlohmann::json(*r.oracle_deviation) : nullptr;
  j["failures"] = r.failures;
  return j;
}

int RunVerify(const VerifyArgs& a, std::ostream& out) {
  RequireFormat(a.format);
  const CampaignConfig cfg = ToCampaignConfig(a);
  if (a.replay_seed) {
    if (cfg.dims.size() != 1 || cfg.q_modes.size() != 1 ||
        cfg.vector_modes.size() != 1) {
      throw Error(ErrorCode::kConfigError,
                  "--replay-seed needs exactly one dim, q mode and vector mode");
    }
    TrialSpec spec;
    spec.seed = *a.replay_seed;
    spec.dim = cfg.dims[0];
    spec.q_mode = cfg.q_modes[0];
    spec.vector_mode = cfg.vector_modes[0];
    const TrialRecord rec = RunTrial(cfg, spec);
    const nlohmann::json j = TrialToJson(rec);
    std::ostringstream text;
    for (const auto& [key, value] : j.items()) {
      text << key << " " << value.dump() << "\n";
    }
    text << (rec.failures.empty() ? "PASS" : "FAIL") << "\n";
    Emit(text.str(), j, a.format, a.report, out);
    return rec.failures.empty() ? kExitOk : kExitVerificationFailed;
  }
  const CampaignReport report = RunCampaign(cfg);
  Emit(ReportToText(report), ReportToJson(report, !a.no_timing), a.format,
       a.report, out);
  return report.passed() ? kExitOk : kExitVerificationFailed;
}

struct SvdArgs {
  std::string input;
  int precision = 10;
  bool vectors = false;
  double parallel_tol = kDefaultParallelTol;
  double orth_tol = kDefaultOrthogonalityTol;
};

void PrintMatrix(const std::string& name, const Matrix<double>& m,
                 int digits, std::ostream& out) {
  out << name << "\n";
  for (Index i = 0; i < m.rows(); ++i) {
    out << "  " << FormatList(m.row(i).transpose(), digits) << "\n";
  }
}

int RunSvd(const SvdArgs& a, std::ostream& out) {
  if (a.precision < 1 || a.precision > 17) {
    throw Error(ErrorCode::kConfigError, "precision must be in [1, 17]");
  }
  const auto m = LoadInstance(a.input, a.orth_tol);
  const auto sp = ComputeSpectrum(m, a.parallel_tol);
  const auto svd = ComputeFullSvd(m, a.parallel_tol);
  const int d = a.precision;
  const double lhs = sp.sigma_max - sp.sign_term * sp.sigma_min;
  out << "n " << m.dim() << "\n"
      << "branch " << BranchName(sp.branch) << "\n"
      << "sigma " << FormatList(svd.sigma, d) << "\n"
      << "sign_term " << sp.sign_term << "\n"
      << "gamma " << FormatDigits(sp.scalars.gamma, d) << "\n"
      << "theorem lhs " << FormatDigits(lhs, d) << "\n"
      << "theorem rhs " << FormatDigits(sp.scalars.product(), d) << "\n";
  if (sp.branch == Branch::kZeroVector) out << "note A equals Q\n";
  if (m.dim() == 1) {
    out << "note n = 1: the identity needs n >= 2 (sigma_max = sigma_min)\n";
  }
  if (a.vectors) {
    PrintMatrix("U", svd.u, d, out);
    out << "Sigma " << FormatList(svd.sigma, d) << "\n";
    PrintMatrix("V", svd.v, d, out);
  }
  return kExitOk;
}

struct LemmaArgs {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::string dims = "1,2,3,10,100";
  std::string format = "text";
  std::string report;
  bool no_timing = false;
};

int RunLemma(const LemmaArgs& a, std::ostream& out) {
  RequireFormat(a.format);
  LemmaSweepConfig cfg;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.dims = ParseDims(a.dims);
  const LemmaSweepReport r = RunLemmaSweep(cfg);
  Emit(LemmaReportToText(r), LemmaReportToJson(r, !a.no_timing), a.format,
       a.report, out);
  return r.passed() ? kExitOk : kExitVerificationFailed;
}

struct BenchArgs {
  std::string dims = "2,8,32,64";
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  std::string out_csv;
};

int RunBenchCommand(const BenchArgs& a, std::ostream& out) {
  BenchConfig cfg;
  cfg.dims = ParseDims(a.dims);
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  const BenchReport r = RunBench(cfg);
  out << BenchToText(r);
  if (!a.out_csv.empty()) WriteFile(a.out_csv, BenchToCsv(r));
  return r.passed() ? kExitOk : kExitVerificationFailed;
}

struct SampleArgs {
  long long dim = 3;
  std::string q_mode = "identity";
  std::string vector_mode = "gaussian";
  double epsilon = 1e-7;
  std::uint64_t seed = 1;
  std::string out_path;
};

int RunSample(const SampleArgs& a, std::ostream& out) {
  InstanceDistribution dist;
  dist.dim = static_cast<Index>(a.dim);
  dist.q_mode = ParseQMode(a.q_mode);
  dist.vector_mode = ParseVectorMode(a.vector_mode);
  dist.epsilon = a.epsilon;
  const std::string text = SerializeInstance(SampleInstance(dist, a.seed));
  if (a.out_path.empty()) {
    out << text;
  } else {
    WriteFile(a.out_path, text);
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Closed-form SVD of orthogonal-plus-rank-one matrices"};
  app.name(args.empty() ? "orthsvd" : args[0]);
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand(
      "verify", "Seeded campaign checking the closed form against Jacobi");
  verify->add_option("--trials", va.trials, "Trials per (dim, mode) cell")
      ->capture_default_str();
  verify->add_option("--dims", va.dims, "Comma-separated dimensions")
      ->capture_default_str();
  verify->add_option("--q-mode", va.q_modes,
                     "identity, permutation, haar, a comma list, or all")
      ->capture_default_str();
  verify->add_option("--vector-mode", va.vector_modes,
                     "gaussian, parallel_pair, near_parallel, singular_pair, "
                     "zero, a comma list, or all")
      ->capture_default_str();
  verify->add_option("--epsilon", va.epsilon, "Relative offset for near_parallel")
      ->capture_default_str();
  verify->add_option("--scale-lo", va.scale_lo, "Smallest ||a||, ||b||")
      ->capture_default_str();
  verify->add_option("--scale-hi", va.scale_hi, "Largest ||a||, ||b||")
      ->capture_default_str();
  verify->add_option("--seed", va.seed, "Campaign seed")->capture_default_str();
  verify->add_option("--tol-theorem", va.tol_theorem)->capture_default_str();
  verify->add_option("--tol-oracle", va.tol_oracle)->capture_default_str();
  verify->add_option("--tol-reconstruction", va.tol_reconstruction)
      ->capture_default_str();
  verify->add_option("--oracle-cutoff", va.oracle_cutoff,
                     "Largest dim compared against Jacobi")
      ->capture_default_str();
  verify->add_option("--parallel-tol", va.parallel_tol)->capture_default_str();
  verify->add_option("--threads", va.threads)->capture_default_str();
  verify->add_option("--report", va.report, "Also write the report here");
  verify->add_option("--format", va.format, "text or json")
      ->capture_default_str();
  verify->add_flag("--no-timing", va.no_timing,
                   "Omit wall-clock fields from JSON output");
  verify->add_option("--replay-seed", va.replay_seed,
                     "Rerun one recorded trial seed");

  SvdArgs sa;
  auto* svd = app.add_subcommand("svd", "Closed-form SVD of one instance file");
  svd->add_option("--input", sa.input, "Instance file")->required();
  svd->add_option("--precision", sa.precision, "Significant digits")
      ->capture_default_str();
  svd->add_flag("--vectors", sa.vectors, "Print U, Sigma and V");
  svd->add_option("--parallel-tol", sa.parallel_tol)->capture_default_str();
  svd->add_option("--orth-tol", sa.orth_tol, "Accepted max|Q^T Q - I|")
      ->capture_default_str();

  LemmaArgs la;
  auto* lemma = app.add_subcommand("lemma1", "Random sweep of the norm inequality");
  lemma->add_option("--trials", la.trials)->capture_default_str();
  lemma->add_option("--seed", la.seed)->capture_default_str();
  lemma->add_option("--dims", la.dims)->capture_default_str();
  lemma->add_option("--format", la.format, "text or json")->capture_default_str();
  lemma->add_option("--report", la.report, "Also write the report here");
  lemma->add_flag("--no-timing", la.no_timing);

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Time closed form against Jacobi");
  bench->add_option("--dims", ba.dims)->capture_default_str();
  bench->add_option("--trials", ba.trials, "Instances per dim")
      ->capture_default_str();
  bench->add_option("--seed", ba.seed)->capture_default_str();
  bench->add_option("--out", ba.out_csv, "CSV output path");

  SampleArgs pa;
  auto* sample = app.add_subcommand("sample", "Write one sampled instance file");
  sample->add_option("--dim", pa.dim)->capture_default_str();
  sample->add_option("--q-mode", pa.q_mode)->capture_default_str();
  sample->add_option("--vector-mode", pa.vector_mode)->capture_default_str();
  sample->add_option("--epsilon", pa.epsilon)->capture_default_str();
  sample->add_option("--seed", pa.seed)->capture_default_str();
  sample->add_option("--out", pa.out_path, "Output path (default stdout)");

  std::vector<std::string> rest(args.rbegin(), args.rend());
  if (!rest.empty()) rest.pop_back();
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    if (e.get_exit_code() == 0) return kExitOk;
    return kExitUsage;
  }

  try {
    if (*verify) return RunVerify(va, out);
    if (*svd) return RunSvd(sa, out);
    if (*lemma) return RunLemma(la, out);
    if (*bench) return RunBenchCommand(ba, out);
    if (*sample) return RunSample(pa, out);
  } catch (const Error& e) {
    err << "error: " << ErrorCodeName(e.code()) << ": " << e.what() << "\n";
    return e.code() == ErrorCode::kNoConvergence ? kExitVerificationFailed
                                                 : kExitUsage;
  }
  return kExitUsage;
}

}  // namespace orthsvd
