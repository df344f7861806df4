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

// Closed-form singular value decomposition of A = Q + a b^T.
//
// Left-multiplying by Q^T does not change singular values, so everything is
// computed for I + x y^T with x = Q^T a / ||a|| and y = ||a|| b, then U is
// premultiplied by Q. With c = x^T y and t = ||y||:
//
//   A^T A - I = (x + y)(x + y)^T - x x^T
//
// so A^T A is the identity outside span{x, y}. Inside that plane the two
// eigenvalues are
//
//   lambda_{1,2} = 1/2 + ||x+y||^2 / 2 +- ||y|| ||2x+y|| / 2,
//   ||x+y||^2 = 1 + 2c + t^2,   ||2x+y||^2 = 4 + 4c + t^2,
//
// with eigenvectors x + s y where s^2 - s - (1 + c) / t^2 = 0. Hence
// sigma_1 - sign(1 + c) sigma_n = t = ||a|| ||b||.

#ifndef ORTHSVD_CLOSED_FORM_HPP_
#define ORTHSVD_CLOSED_FORM_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "orthsvd/core.hpp"

namespace orthsvd {

enum class Branch { kZeroVector, kParallel, kNonParallel };

inline const char* BranchName(Branch b) {
  switch (b) {
    case Branch::kZeroVector: return "zero_vector";
    case Branch::kParallel: return "parallel";
    case Branch::kNonParallel: return "non_parallel";
  }
  return "unknown";
}

/// Relative rejection-norm threshold below which y counts as parallel to x.
inline constexpr double kDefaultParallelTol = 1e-12;

/// sign() with sign(0) = +1.
template <typename Scalar>
int SignOf(Scalar v) {
  return v < Scalar(0) ? -1 : 1;
}

template <typename Scalar>
struct NormalizedPair {
  Vector<Scalar> x;  // unit
  Vector<Scalar> y;
  Scalar c{0};       // x^T y
  Scalar t{0};       // ||y||
};

/// x = (Q^T a) / alpha, y = alpha b.
template <typename Scalar>
NormalizedPair<Scalar> NormalizePair(const InvariantScalars<Scalar>& s,
                                     const Vector<Scalar>& b,
                                     const Vector<Scalar>& q_transpose_a) {
  if (s.alpha == Scalar(0) || s.beta == Scalar(0)) {
    throw Error(ErrorCode::kZeroVector, "a and b must both be nonzero");
  }
  if (b.size() != q_transpose_a.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "a and b differ in length");
  }
  NormalizedPair<Scalar> p;
  p.x = q_transpose_a / s.alpha;
  p.y = s.alpha * b;
  p.c = s.gamma;
  p.t = s.alpha * s.beta;
  return p;
}

template <typename Scalar>
struct SpecialEigenvalues {
  Scalar lambda1{1};
  Scalar lambda2{1};
};

template <typename Scalar>
struct MixingCoefficients {
  Scalar s_plus{0};
  Scalar s_minus{0};
};

namespace detail {

// |c| may exceed t by rounding when y is (anti)parallel to x. Such c is
// accepted unchanged so that 1 + c stays the 1 + gamma of the inputs.
inline constexpr double kCauchySchwarzSlack = 1e-12;

template <typename Scalar>
Scalar CheckCorrelation(Scalar c, Scalar t) {
  using std::abs;
  if (!(t >= Scalar(0)) || !std::isfinite(static_cast<double>(t)) ||
      !std::isfinite(static_cast<double>(c))) {
    throw Error(ErrorCode::kDomainError, "t must be finite and nonnegative");
  }
  if (abs(c) > t + Scalar(kCauchySchwarzSlack) * t) {
    throw Error(ErrorCode::kDomainError,
                "|c| exceeds t: inputs violate Cauchy-Schwarz",
                static_cast<double>(abs(c) - t));
  }
  return c;
}

// c + t, which cancels when y points against x. With the rejection norm
// rho = ||y - c x|| it equals rho^2 / (t - c) without cancellation.
template <typename Scalar>
Scalar AntiAlignmentGap(Scalar c, Scalar t, Scalar rho) {
  if (c >= Scalar(0) || !(rho >= Scalar(0))) return c + t;
  return rho * rho / (t - c);
}

// ||2x + y|| in scalar form. 4 + 4c + t^2 is rewritten as
// (2 - t)^2 + 4 (c + t), a sum of nonnegative terms.
template <typename Scalar>
Scalar TwoXPlusYNorm(Scalar gap, Scalar t) {
  using std::sqrt;
  const Scalar d = Scalar(2) - t;
  return sqrt(d * d + Scalar(4) * gap);
}

// sqrt(lambda1) = (t + ||2x+y||) / 2, the root with no cancellation.
template <typename Scalar>
Scalar LargestSingularValue(Scalar gap, Scalar t) {
  return std::max(Scalar(1), (t + TwoXPlusYNorm(gap, t)) / Scalar(2));
}

template <typename Scalar>
SpecialEigenvalues<Scalar> SpecialEigenvaluesFromGap(Scalar c, Scalar t,
                                                     Scalar gap) {
  const Scalar sigma1 = LargestSingularValue(gap, t);
  const Scalar p = Scalar(1) + c;
  SpecialEigenvalues<Scalar> ev;
  ev.lambda1 = sigma1 * sigma1;
  ev.lambda2 = ev.lambda1 > Scalar(0)
                   ? std::min(Scalar(1), (p * p) / ev.lambda1)
                   : Scalar(0);
  return ev;
}

template <typename Scalar>
MixingCoefficients<Scalar> MixingCoefficientsFromGap(Scalar c, Scalar t,
                                                     Scalar gap) {
  MixingCoefficients<Scalar> m;
  m.s_plus = Scalar(0.5) + TwoXPlusYNorm(gap, t) / (Scalar(2) * t);
  m.s_minus = -(Scalar(1) + c) / (t * t * m.s_plus);
  return m;
}

}  // namespace detail

/// The two eigenvalues of A^T A that differ from 1. lambda2 comes from the
/// product identity lambda1 lambda2 = (1 + c)^2.
template <typename Scalar>
SpecialEigenvalues<Scalar> ComputeSpecialEigenvalues(Scalar c, Scalar t) {
  c = detail::CheckCorrelation(c, t);
  return detail::SpecialEigenvaluesFromGap(c, t, std::max(Scalar(0), c + t));
}

/// Roots of s^2 - s - (1 + c) / t^2; s_plus belongs to lambda1 through
/// lambda = 1 + c + s t^2. s_minus uses Vieta's product.
template <typename Scalar>
MixingCoefficients<Scalar> ComputeMixingCoefficients(Scalar c, Scalar t) {
  if (!(t > Scalar(0))) {
    throw Error(ErrorCode::kDomainError, "mixing coefficients need t > 0");
  }
  c = detail::CheckCorrelation(c, t);
  return detail::MixingCoefficientsFromGap(c, t, std::max(Scalar(0), c + t));
}

template <typename Scalar>
struct Spectrum {
  Index dim{0};
  Branch branch{Branch::kZeroVector};
  Scalar sigma_max{1};
  Scalar sigma_min{1};
  Index unit_multiplicity{0};
  int sign_term{1};  // sign(1 + gamma), sign(0) = +1
  Scalar lambda1{1};
  Scalar lambda2{1};
  InvariantScalars<Scalar> scalars;
  Scalar rejection{0};  // ||y - (x^T y) x||

  /// All n singular values, nonincreasing.
  Vector<Scalar> SingularValues() const {
    Vector<Scalar> out = Vector<Scalar>::Ones(dim);
    switch (branch) {
      case Branch::kZeroVector:
        break;
      case Branch::kParallel:
        if (dim == 1) {
          out(0) = sigma_max;
        } else if (ParallelSpecialIsLargest()) {
          out(0) = sigma_max;
        } else {
          out(dim - 1) = sigma_min;
        }
        break;
      case Branch::kNonParallel:
        out(0) = sigma_max;
        out(dim - 1) = sigma_min;
        break;
    }
    return out;
  }

  /// In the parallel branch only one singular value differs from 1; this
  /// says whether it sits at the top (|1 + gamma| >= 1) or the bottom.
  bool ParallelSpecialIsLargest() const {
    using std::abs;
    return abs(Scalar(1) + scalars.gamma) >= Scalar(1);
  }
};

namespace detail {

template <typename Scalar>
struct Reduction {
  InvariantScalars<Scalar> scalars;
  Vector<Scalar> q_transpose_a;
};

template <typename Scalar>
Reduction<Scalar> Reduce(const RankOneUpdatedOrthogonal<Scalar>& m) {
  Reduction<Scalar> r;
  r.q_transpose_a = m.ApplyQTranspose(m.a());
  r.scalars.alpha = m.a().norm();
  r.scalars.beta = m.b().norm();
  r.scalars.gamma = r.q_transpose_a.dot(m.b());
  return r;
}

}  // namespace detail

template <typename Scalar>
Spectrum<Scalar> ComputeSpectrum(
    const RankOneUpdatedOrthogonal<Scalar>& m,
    Scalar parallel_tol = Scalar(kDefaultParallelTol)) {
  using std::abs;
  const auto red = detail::Reduce(m);
  Spectrum<Scalar> sp;
  sp.dim = m.dim();
  sp.scalars = red.scalars;
  const Scalar t = red.scalars.product();
  if (t == Scalar(0)) {
    sp.branch = Branch::kZeroVector;
    sp.unit_multiplicity = sp.dim;
    return sp;
  }

  const Scalar c = detail::CheckCorrelation(red.scalars.gamma, t);
  const Scalar p = Scalar(1) + c;
  sp.sign_term = SignOf(p);
  const auto pair = NormalizePair(red.scalars, m.b(), red.q_transpose_a);
  sp.rejection = (pair.y - c * pair.x).norm();

  const Scalar gap = detail::AntiAlignmentGap(c, t, sp.rejection);
  const auto ev = detail::SpecialEigenvaluesFromGap(c, t, gap);
  sp.lambda1 = ev.lambda1;
  sp.lambda2 = ev.lambda2;
  sp.sigma_max = detail::LargestSingularValue(gap, t);
  sp.sigma_min = std::min(Scalar(1), abs(p) / sp.sigma_max);

  if (sp.dim == 1) {
    // No complement: the lone singular value is |q + a b| = |1 + c|.
    sp.branch = Branch::kParallel;
    sp.unit_multiplicity = 0;
    sp.sigma_max = sp.sigma_min = abs(p);
  } else if (sp.rejection <= parallel_tol * t) {
    sp.branch = Branch::kParallel;
    sp.unit_multiplicity = sp.dim - 1;
  } else {
    sp.branch = Branch::kNonParallel;
    sp.unit_multiplicity = sp.dim - 2;
  }
  return sp;
}

/// |sigma_max - sign(1 + gamma) sigma_min - ||a|| ||b|||.
template <typename Scalar>
Scalar TheoremResidual(const Spectrum<Scalar>& sp) {
  using std::abs;
  return abs(sp.sigma_max - Scalar(sp.sign_term) * sp.sigma_min -
             sp.scalars.product());
}

template <typename Scalar>
Scalar TheoremResidual(const RankOneUpdatedOrthogonal<Scalar>& m) {
  return TheoremResidual(ComputeSpectrum(m));
}

template <typename Scalar>
struct SpecialEigenpair {
  Scalar lambda{1};
  // Coefficient of y in x + s y; +inf would mean the pure y direction.
  Scalar s{0};
  Vector<Scalar> v;  // unit right singular vector
};

namespace detail {

/// Candidates whose squared remaining norm falls below this are dropped.
inline constexpr double kComplementDependencyTol = 1e-8;

// Orthonormal completion of `basis` (orthonormal columns), seeded with e_0,
// e_1, ... and two passes of modified Gram-Schmidt.
template <typename Scalar>
Matrix<Scalar> OrthonormalComplement(const Matrix<Scalar>& basis) {
  const Index n = basis.rows();
  const Index need = n - basis.cols();
  Matrix<Scalar> out(n, need);
  Index found = 0;
  for (Index k = 0; k < n && found < need; ++k) {
    Vector<Scalar> v = Vector<Scalar>::Unit(n, k);
    for (int pass = 0; pass < 2; ++pass) {
      for (Index j = 0; j < basis.cols(); ++j) {
        v -= basis.col(j).dot(v) * basis.col(j);
      }
      for (Index j = 0; j < found; ++j) {
        v -= out.col(j).dot(v) * out.col(j);
      }
    }
    const Scalar norm = v.norm();
    if (norm < Scalar(kComplementDependencyTol)) continue;
    out.col(found++) = v / norm;
  }
  // Unreachable for orthonormal input: n candidates always span R^n.
  if (found != need) {
    throw Error(ErrorCode::kDomainError, "complement basis incomplete");
  }
  return out;
}

template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> Perp(const Eigen::Matrix<Scalar, 2, 1>& v) {
  return {-v(1), v(0)};
}

// The 2-D invariant plane of I + x y^T in the orthonormal frame {x, w},
// w = (y - c x) / rho. There I + x y^T acts as [[1 + c, rho], [0, 1]].
template <typename Scalar>
struct PlaneSvd {
  Vector<Scalar> x;
  Vector<Scalar> w;
  Eigen::Matrix<Scalar, 2, 2> v;  // columns: right vectors for sigma1, sigma2
  Eigen::Matrix<Scalar, 2, 2> u;
  MixingCoefficients<Scalar> mixing;
};

template <typename Scalar>
PlaneSvd<Scalar> SolvePlane(const NormalizedPair<Scalar>& pair, Scalar c) {
  using std::abs;
  using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
  PlaneSvd<Scalar> ps;
  ps.x = pair.x;
  Vector<Scalar> w = pair.y - c * pair.x;
  w -= pair.x.dot(w) * pair.x;
  const Scalar rho = w.norm();
  ps.w = w / rho;

  ps.mixing = MixingCoefficientsFromGap(
      c, pair.t, AntiAlignmentGap(c, pair.t, rho));
  // x + s y = (1 + s c) x + (s rho) w.
  const Vec2 cand_plus(Scalar(1) + ps.mixing.s_plus * c,
                       ps.mixing.s_plus * rho);
  const Vec2 cand_minus(Scalar(1) + ps.mixing.s_minus * c,
                        ps.mixing.s_minus * rho);

  // The x-coordinate 1 + s c cancels for whichever candidate lies near w.
  // The two candidates are orthogonal, so take the one closer to x and
  // rotate it by 90 degrees for the other.
  auto x_share = [](const Vec2& v) {
    const Scalar n = v.norm();
    return n > Scalar(0) ? abs(v(0)) / n : Scalar(0);
  };
  Vec2 v1, v2;
  if (x_share(cand_plus) >= x_share(cand_minus)) {
    v1 = cand_plus.normalized();
    v2 = Perp(v1);
    if (v2.dot(cand_minus) < Scalar(0)) v2 = -v2;
  } else {
    v2 = cand_minus.normalized();
    v1 = Perp(v2);
    if (v1.dot(cand_plus) < Scalar(0)) v1 = -v1;
  }

  Eigen::Matrix<Scalar, 2, 2> block;
  block << Scalar(1) + c, rho, Scalar(0), Scalar(1);
  const Vec2 u1 = (block * v1).normalized();
  Vec2 u2 = Perp(u1);
  if (u2.dot(block * v2) < Scalar(0)) u2 = -u2;

  ps.v.col(0) = v1;
  ps.v.col(1) = v2;
  ps.u.col(0) = u1;
  ps.u.col(1) = u2;
  return ps;
}

template <typename Scalar, typename Derived>
Vector<Scalar> Lift(const PlaneSvd<Scalar>& ps,
                    const Eigen::MatrixBase<Derived>& coords) {
  return coords(0) * ps.x + coords(1) * ps.w;
}

}  // namespace detail

/// The eigenpairs of A^T A whose eigenvalue differs from 1 (two in the
/// non-parallel branch, one in the parallel branch, none otherwise).
template <typename Scalar>
std::vector<SpecialEigenpair<Scalar>> ComputeSpecialEigenpairs(
    const RankOneUpdatedOrthogonal<Scalar>& m,
    Scalar parallel_tol = Scalar(kDefaultParallelTol)) {
  const Spectrum<Scalar> sp = ComputeSpectrum(m, parallel_tol);
  std::vector<SpecialEigenpair<Scalar>> out;
  if (sp.branch == Branch::kZeroVector) return out;
  const auto red = detail::Reduce(m);
  const auto pair = NormalizePair(red.scalars, m.b(), red.q_transpose_a);
  const Scalar c = detail::CheckCorrelation(red.scalars.gamma, pair.t);
  if (sp.branch == Branch::kParallel) {
    const Scalar p = Scalar(1) + c;
    out.push_back({p * p, Scalar(0), pair.x});
    return out;
  }
  const auto ps = detail::SolvePlane(pair, c);
  out.push_back({sp.lambda1, ps.mixing.s_plus, detail::Lift(ps, ps.v.col(0))});
  out.push_back(
      {sp.lambda2, ps.mixing.s_minus, detail::Lift(ps, ps.v.col(1))});
  return out;
}

/// Full U, Sigma, V from the closed form. The unit singular subspace is
/// completed deterministically from the standard basis.
template <typename Scalar>
FullSvd<Scalar> ComputeFullSvd(
    const RankOneUpdatedOrthogonal<Scalar>& m,
    Scalar parallel_tol = Scalar(kDefaultParallelTol)) {
  const Index n = m.dim();
  const Spectrum<Scalar> sp = ComputeSpectrum(m, parallel_tol);
  FullSvd<Scalar> svd;
  svd.sigma = sp.SingularValues();

  if (sp.branch == Branch::kZeroVector) {
    svd.v = Matrix<Scalar>::Identity(n, n);
    svd.u = m.is_identity() ? svd.v : m.q()->matrix();
    return svd;
  }

  const auto red = detail::Reduce(m);
  const auto pair = NormalizePair(red.scalars, m.b(), red.q_transpose_a);
  const Scalar c = detail::CheckCorrelation(red.scalars.gamma, pair.t);
  svd.u.resize(n, n);
  svd.v.resize(n, n);

  if (sp.branch == Branch::kParallel) {
    const Matrix<Scalar> complement = detail::OrthonormalComplement<Scalar>(
        Matrix<Scalar>(pair.x));
    const Vector<Scalar> u_special =
        Scalar(SignOf(Scalar(1) + c)) * pair.x;
    const Index special = sp.ParallelSpecialIsLargest() ? 0 : n - 1;
    const Index offset = special == 0 ? 1 : 0;
    svd.v.col(special) = pair.x;
    svd.u.col(special) = u_special;
    svd.v.middleCols(offset, n - 1) = complement;
    svd.u.middleCols(offset, n - 1) = complement;
  } else {
    const auto ps = detail::SolvePlane(pair, c);
    Matrix<Scalar> plane(n, 2);
    plane << ps.x, ps.w;
    const Matrix<Scalar> complement =
        detail::OrthonormalComplement<Scalar>(plane);
    svd.v.col(0) = detail::Lift(ps, ps.v.col(0));
    svd.v.col(n - 1) = detail::Lift(ps, ps.v.col(1));
    svd.u.col(0) = detail::Lift(ps, ps.u.col(0));
    svd.u.col(n - 1) = detail::Lift(ps, ps.u.col(1));
    svd.v.middleCols(1, n - 2) = complement;
    svd.u.middleCols(1, n - 2) = complement;
  }

  if (!m.is_identity()) svd.u = m.q()->matrix() * svd.u;
  return svd;
}

/// max|A^T A - I - (x+y)(x+y)^T + x x^T| for the identity-case matrix
/// I + (Q^T a) b^T.
template <typename Scalar>
Scalar RankRevelationResidual(const RankOneUpdatedOrthogonal<Scalar>& m) {
  const auto red = detail::Reduce(m);
  const auto pair = NormalizePair(red.scalars, m.b(), red.q_transpose_a);
  const Index n = m.dim();
  Matrix<Scalar> a = red.q_transpose_a * m.b().transpose();
  a.diagonal().array() += Scalar(1);
  const Vector<Scalar> xy = pair.x + pair.y;
  Matrix<Scalar> r = a.transpose() * a;
  r.diagonal().array() -= Scalar(1);
  r -= xy * xy.transpose();
  r += pair.x * pair.x.transpose();
  return n == 0 ? Scalar(0) : r.cwiseAbs().maxCoeff();
}

template <typename Scalar>
struct LemmaGap {
  Scalar upper_slack{0};  // ||x+y||^2 + ||y|| ||2x+y|| - 1
  Scalar lower_slack{0};  // 1 - ||x+y||^2 + ||y|| ||2x+y||
};

/// Maximum deviation of ||x|| from 1 accepted by ComputeLemmaGap.
inline constexpr double kUnitTol = 1e-10;

/// Slacks of ||x+y||^2 + ||y|| ||2x+y|| >= 1 >= ||x+y||^2 - ||y|| ||2x+y||
/// for unit x.
///
/// With z = 2x + y the slacks are ||y|| ||z|| +- y^T z (plus ||x||^2 - 1),
/// and their product is ||y||^2 ||z||^2 - (y^T z)^2. The side that cancels
/// is recovered from that product so large ||y|| keeps full accuracy.
template <typename Scalar>
LemmaGap<Scalar> ComputeLemmaGap(const Vector<Scalar>& x,
                                 const Vector<Scalar>& y) {
  using std::abs;
  if (x.size() != y.size() || x.size() == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "x and y differ in length");
  }
  RequireFinite(x, "x");
  RequireFinite(y, "y");
  const Scalar x_norm = x.norm();
  if (abs(x_norm - Scalar(1)) > Scalar(kUnitTol)) {
    throw Error(ErrorCode::kNotUnit, "x must be a unit vector",
                static_cast<double>(x_norm));
  }
  const Scalar unit_defect = x.squaredNorm() - Scalar(1);
  const Vector<Scalar> z = Scalar(2) * x + y;
  const Scalar y_norm = y.norm();
  const Scalar z_norm = z.norm();
  const Scalar both = y_norm * z_norm;
  const Scalar yz = y.dot(z);

  Scalar plus = 0, minus = 0;  // ||y|| ||z|| + y^T z and ||y|| ||z|| - y^T z
  if (both > Scalar(0)) {
    // ||y||^2 ||z||^2 - (y^T z)^2 = ||y||^2 ||z - (y^T z / ||y||^2) y||^2.
    const Vector<Scalar> z_perp = z - (yz / (y_norm * y_norm)) * y;
    const Scalar wedge = y_norm * y_norm * z_perp.squaredNorm();
    if (yz >= Scalar(0)) {
      plus = both + yz;
      minus = wedge / plus;
    } else {
      minus = both - yz;
      plus = wedge / minus;
    }
  }
  return {plus + unit_defect, minus - unit_defect};
}

}  // namespace orthsvd

#endif  // ORTHSVD_CLOSED_FORM_HPP_
