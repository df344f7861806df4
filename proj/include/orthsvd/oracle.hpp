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

// Independent ground truth: a dense one-sided Jacobi SVD and seeded
// generators for orthogonal matrices and test instances. Nothing here calls
// into closed_form.hpp.

#ifndef ORTHSVD_ORACLE_HPP_
#define ORTHSVD_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "orthsvd/core.hpp"

namespace orthsvd {

// ---------------------------------------------------------------------------
// Random numbers.
//
// Streams come from std::mt19937_64, whose output sequence is fixed by the
// standard. Seeds for independent trials are derived with the SplitMix64
// finalizer, so trial k of a campaign never depends on trials 0..k-1. All
// distributions are explicit transforms of the raw 64-bit output; the
// <random> distribution classes are implementation-defined and not used.
// ---------------------------------------------------------------------------

inline std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Order-sensitive combination of two seeds.
inline std::uint64_t MixSeeds(std::uint64_t a, std::uint64_t b) {
  return SplitMix64(SplitMix64(a) ^ (b + 0x632be59bd9b4e019ULL));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(SplitMix64(seed)) {}

  std::uint64_t NextU64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }

  /// Uniform on (0, 1].
  double UniformPositive() { return 1.0 - Uniform(); }

  /// Standard normal via Box-Muller; both outputs of a pair are used.
  double Gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double radius = std::sqrt(-2.0 * std::log(UniformPositive()));
    const double angle = 2.0 * std::numbers::pi * Uniform();
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  double LogUniform(double lo, double hi) {
    return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * Uniform());
  }

  /// Uniform integer in [0, n).
  std::uint64_t Below(std::uint64_t n) {
    return std::min<std::uint64_t>(
        n - 1, static_cast<std::uint64_t>(Uniform() * static_cast<double>(n)));
  }

  Vector<double> GaussianVector(Index n) {
    Vector<double> v(n);
    for (Index i = 0; i < n; ++i) v(i) = Gaussian();
    return v;
  }

  /// Uniform on the unit sphere.
  Vector<double> UnitVector(Index n) {
    Vector<double> v = GaussianVector(n);
    const double norm = v.norm();
    if (norm == 0.0) return Vector<double>::Unit(n, 0);
    return v / norm;
  }

  /// Unit vector orthogonal to the unit vector `u` (requires n >= 2).
  Vector<double> UnitVectorOrthogonalTo(const Vector<double>& u) {
    for (;;) {
      Vector<double> v = GaussianVector(u.size());
      v -= u.dot(v) * u;
      v -= u.dot(v) * u;
      const double norm = v.norm();
      if (norm > 1e-3) return v / norm;
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// ---------------------------------------------------------------------------
// One-sided (Hestenes) Jacobi SVD.
// ---------------------------------------------------------------------------

struct JacobiConfig {
  double sweep_tol = 1e-14;  // on |a_p^T a_q| / (||a_p|| ||a_q||)
  int max_sweeps = 60;
};

template <typename Derived>
FullSvd<typename Derived::Scalar> JacobiSvd(
    const Eigen::MatrixBase<Derived>& input, const JacobiConfig& cfg = {}) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using std::sqrt;
  if (input.rows() != input.cols() || input.rows() == 0) {
    throw Error(ErrorCode::kNotSquare, "jacobi_svd expects a square matrix");
  }
  if (!(cfg.sweep_tol > 0.0) || cfg.max_sweeps < 1) {
    throw Error(ErrorCode::kConfigError, "invalid Jacobi configuration");
  }
  RequireFinite(input, "matrix");
  const Index n = input.rows();
  Matrix<Scalar> w = input;
  Matrix<Scalar> v = Matrix<Scalar>::Identity(n, n);
  const Scalar tol = Scalar(cfg.sweep_tol);

  bool converged = false;
  for (int sweep = 0; sweep < cfg.max_sweeps && !converged; ++sweep) {
    converged = true;
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const Scalar app = w.col(p).squaredNorm();
        const Scalar aqq = w.col(q).squaredNorm();
        const Scalar apq = w.col(p).dot(w.col(q));
        if (apq == Scalar(0) || abs(apq) <= tol * sqrt(app * aqq)) continue;
        converged = false;
        // Rotation zeroing the (p, q) entry of the column Gram matrix.
        const Scalar zeta = (aqq - app) / (Scalar(2) * apq);
        const Scalar t = (zeta >= Scalar(0) ? Scalar(1) : Scalar(-1)) /
                         (abs(zeta) + sqrt(Scalar(1) + zeta * zeta));
        const Scalar cs = Scalar(1) / sqrt(Scalar(1) + t * t);
        const Scalar sn = cs * t;
        for (Matrix<Scalar>* m : {&w, &v}) {
          Scalar* cp = m->col(p).data();
          Scalar* cq = m->col(q).data();
          for (Index i = 0; i < n; ++i) {
            const Scalar xp = cp[i];
            const Scalar xq = cq[i];
            cp[i] = cs * xp - sn * xq;
            cq[i] = sn * xp + cs * xq;
          }
        }
      }
    }
  }
  if (!converged) {
    throw Error(ErrorCode::kNoConvergence,
                "Jacobi SVD did not converge in " +
                    std::to_string(cfg.max_sweeps) + " sweeps",
                cfg.max_sweeps);
  }

  Vector<Scalar> norms(n);
  for (Index k = 0; k < n; ++k) norms(k) = w.col(k).norm();
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](Index i, Index j) { return norms(i) > norms(j); });

  FullSvd<Scalar> out;
  out.sigma.resize(n);
  out.u.resize(n, n);
  out.v.resize(n, n);
  const Scalar cutoff = norms.maxCoeff() * Scalar(n) *
                        std::numeric_limits<Scalar>::epsilon();
  std::vector<bool> filled(n, false);
  // Removes the filled columns of U from `cand`; returns the remaining norm.
  auto orthogonalize = [&](Vector<Scalar>& cand) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Index j = 0; j < n; ++j) {
        if (filled[j]) cand -= out.u.col(j).dot(cand) * out.u.col(j);
      }
    }
    return cand.norm();
  };
  // Small columns carry relative error eps * sigma_max / sigma_k, so each
  // is orthogonalized against the larger ones and dropped if little remains.
  for (Index k = 0; k < n; ++k) {
    const Index src = order[k];
    out.sigma(k) = norms(src);
    out.v.col(k) = v.col(src);
    if (norms(src) > cutoff && norms(src) > Scalar(0)) {
      Vector<Scalar> cand = w.col(src) / norms(src);
      const Scalar norm = orthogonalize(cand);
      if (norm > Scalar(0.5)) {
        out.u.col(k) = cand / norm;
        filled[k] = true;
      }
    }
  }
  // Remaining columns: complete U with the standard basis vector that keeps
  // the most norm after projection (at least 1 / sqrt(n) of it survives).
  for (Index k = 0; k < n; ++k) {
    if (filled[k]) continue;
    Vector<Scalar> best;
    Scalar best_norm(-1);
    for (Index e = 0; e < n; ++e) {
      Vector<Scalar> cand = Vector<Scalar>::Unit(n, e);
      const Scalar norm = orthogonalize(cand);
      if (norm > best_norm) {
        best_norm = norm;
        best = cand;
      }
    }
    best /= best_norm;
    orthogonalize(best);
    out.u.col(k) = best / best.norm();
    filled[k] = true;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Instance generation.
// ---------------------------------------------------------------------------

/// Haar-distributed orthogonal matrix: Householder QR of a Gaussian matrix
/// with each column of Q flipped by the sign of the matching diagonal of R.
inline OrthogonalMatrix<double> RandomOrthogonal(Index n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix<double> g(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) g(i, j) = rng.Gaussian();
  }
  const Eigen::HouseholderQR<Matrix<double>> qr(g);
  Matrix<double> q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (Index j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return ValidateOrthogonal(q, kDefaultOrthogonalityTol);
}

enum class QMode { kIdentity, kPermutation, kHaar };
enum class VectorMode {
  kGaussian,
  kParallelPair,
  kNearParallel,
  kSingularPair,
  kZero,
};

inline const char* QModeName(QMode m) {
  switch (m) {
    case QMode::kIdentity: return "identity";
    case QMode::kPermutation: return "permutation";
    case QMode::kHaar: return "haar";
  }
  return "unknown";
}

inline const char* VectorModeName(VectorMode m) {
  switch (m) {
    case VectorMode::kGaussian: return "gaussian";
    case VectorMode::kParallelPair: return "parallel_pair";
    case VectorMode::kNearParallel: return "near_parallel";
    case VectorMode::kSingularPair: return "singular_pair";
    case VectorMode::kZero: return "zero";
  }
  return "unknown";
}

inline QMode ParseQMode(const std::string& s) {
  if (s == "identity") return QMode::kIdentity;
  if (s == "permutation") return QMode::kPermutation;
  if (s == "haar") return QMode::kHaar;
  throw Error(ErrorCode::kConfigError, "unknown q mode '" + s + "'");
}

inline VectorMode ParseVectorMode(const std::string& s) {
  if (s == "gaussian") return VectorMode::kGaussian;
  if (s == "parallel_pair") return VectorMode::kParallelPair;
  if (s == "near_parallel") return VectorMode::kNearParallel;
  if (s == "singular_pair") return VectorMode::kSingularPair;
  if (s == "zero") return VectorMode::kZero;
  throw Error(ErrorCode::kConfigError, "unknown vector mode '" + s + "'");
}

inline constexpr QMode kAllQModes[] = {QMode::kIdentity, QMode::kPermutation,
                                       QMode::kHaar};
inline constexpr VectorMode kAllVectorModes[] = {
    VectorMode::kGaussian, VectorMode::kParallelPair,
    VectorMode::kNearParallel, VectorMode::kSingularPair, VectorMode::kZero};

struct InstanceDistribution {
  Index dim = 2;
  QMode q_mode = QMode::kIdentity;
  VectorMode vector_mode = VectorMode::kGaussian;
  double epsilon = 1e-7;  // relative rejection for kNearParallel
  double scale_lo = 1e-3;  // ||a|| and ||b|| are log-uniform in this range
  double scale_hi = 1e3;

  void Validate() const {
    if (dim < 1) throw Error(ErrorCode::kConfigError, "dim must be >= 1");
    if (!(epsilon >= 0.0)) {
      throw Error(ErrorCode::kConfigError, "epsilon must be >= 0");
    }
    if (!(scale_lo > 0.0) || !(scale_hi >= scale_lo)) {
      throw Error(ErrorCode::kConfigError,
                  "scale range must be positive and ordered");
    }
    if (dim < 2 && (vector_mode == VectorMode::kNearParallel ||
                    vector_mode == VectorMode::kSingularPair)) {
      throw Error(ErrorCode::kConfigError,
                  std::string(VectorModeName(vector_mode)) +
                      " needs dim >= 2");
    }
  }
};

namespace detail {

// Parallel multiplier mu in y = mu x: a mix of the special
// values -1 (singular) and -2 (reflection) and log-uniform magnitudes of
// either sign, so 1 + mu takes both signs.
inline double DrawParallelMultiplier(Rng& rng, double lo, double hi) {
  const double r = rng.Uniform();
  if (r < 0.1) return -1.0;
  if (r < 0.15) return -2.0;
  const double magnitude = rng.LogUniform(lo * lo, hi * hi);
  return rng.Uniform() < 0.5 ? -magnitude : magnitude;
}

inline Matrix<double> PermutationMatrix(Rng& rng, Index n) {
  std::vector<Index> perm(n);
  std::iota(perm.begin(), perm.end(), Index(0));
  for (Index i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng.Below(static_cast<std::uint64_t>(i) + 1)]);
  }
  Matrix<double> q = Matrix<double>::Zero(n, n);
  for (Index i = 0; i < n; ++i) q(i, perm[i]) = 1.0;
  return q;
}

}  // namespace detail

/// Draws (Q, a, b) from `dist`; a pure function of (dist, seed).
inline RankOneUpdatedOrthogonal<double> SampleInstance(
    const InstanceDistribution& dist, std::uint64_t seed) {
  dist.Validate();
  Rng rng(seed);
  const Index n = dist.dim;

  std::optional<OrthogonalMatrix<double>> q;
  switch (dist.q_mode) {
    case QMode::kIdentity:
      break;
    case QMode::kPermutation:
      q = ValidateOrthogonal(detail::PermutationMatrix(rng, n));
      break;
    case QMode::kHaar:
      q = RandomOrthogonal(n, rng.NextU64());
      break;
  }
  auto make = [&](Vector<double> a, Vector<double> b) {
    return q ? RankOneUpdatedOrthogonal<double>(*q, std::move(a), std::move(b))
             : RankOneUpdatedOrthogonal<double>(std::move(a), std::move(b));
  };
  auto q_transpose = [&](const Vector<double>& v) -> Vector<double> {
    return q ? Vector<double>(q->matrix().transpose() * v) : v;
  };

  const double alpha = rng.LogUniform(dist.scale_lo, dist.scale_hi);
  const Vector<double> a = alpha * rng.UnitVector(n);

  switch (dist.vector_mode) {
    case VectorMode::kGaussian: {
      const double beta = rng.LogUniform(dist.scale_lo, dist.scale_hi);
      return make(a, beta * rng.UnitVector(n));
    }
    case VectorMode::kZero: {
      const double beta = rng.LogUniform(dist.scale_lo, dist.scale_hi);
      return make(Vector<double>::Zero(n), beta * rng.UnitVector(n));
    }
    case VectorMode::kParallelPair: {
      const double mu =
          detail::DrawParallelMultiplier(rng, dist.scale_lo, dist.scale_hi);
      return make(a, (mu / (alpha * alpha)) * q_transpose(a));
    }
    case VectorMode::kNearParallel: {
      const double mu =
          detail::DrawParallelMultiplier(rng, dist.scale_lo, dist.scale_hi);
      const Vector<double> qta = q_transpose(a);
      const Vector<double> side = rng.UnitVectorOrthogonalTo(qta / alpha);
      return make(a, (mu / (alpha * alpha)) *
                         (qta + (dist.epsilon * alpha) * side));
    }
    case VectorMode::kSingularPair: {
      // Q b = -a / alpha^2 + (kappa / alpha) z with z a unit vector
      // orthogonal to a, then b is rescaled until a^T Q b = -1 to rounding.
      const Vector<double> qta = q_transpose(a);
      const Vector<double> side = rng.UnitVectorOrthogonalTo(qta / alpha);
      const double kappa = rng.LogUniform(dist.scale_lo, dist.scale_hi);
      Vector<double> b = -qta / (alpha * alpha) + (kappa / alpha) * side;
      for (int pass = 0; pass < 3; ++pass) {
        const double g = ComputeInvariantScalars(make(a, b)).gamma;
        if (g == -1.0 || g == 0.0) break;
        b *= -1.0 / g;
      }
      return make(a, b);
    }
  }
  throw Error(ErrorCode::kConfigError, "unhandled vector mode");
}

}  // namespace orthsvd

#endif  // ORTHSVD_ORACLE_HPP_
