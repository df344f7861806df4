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

// Domain types shared by every module: the implicit matrix A = Q + a b^T,
// the scalars that determine its spectrum, and the dense SVD container.

#ifndef ORTHSVD_CORE_HPP_
#define ORTHSVD_CORE_HPP_

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace orthsvd {

using Index = Eigen::Index;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

enum class ErrorCode {
  kNotSquare,
  kNotOrthogonal,
  kNonFiniteEntry,
  kDimensionMismatch,
  kZeroVector,
  kDomainError,
  kNotUnit,
  kNoConvergence,
  kParseError,
  kConfigError,
};

const char* ErrorCodeName(ErrorCode code);

// All failures surface as this exception. `value()` carries the offending
// quantity where one exists (orthogonality defect, sweep count, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, double value = 0.0)
      : std::runtime_error(what), code_(code), value_(value) {}

  ErrorCode code() const { return code_; }
  double value() const { return value_; }

 private:
  ErrorCode code_;
  double value_;
};

inline const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotSquare: return "NotSquare";
    case ErrorCode::kNotOrthogonal: return "NotOrthogonal";
    case ErrorCode::kNonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kNotUnit: return "NotUnit";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

/// Default acceptance threshold on max|Q^T Q - I|.
inline constexpr double kDefaultOrthogonalityTol = 1e-10;

template <typename Derived>
bool AllFinite(const Eigen::MatrixBase<Derived>& m) {
  return m.derived().array().isFinite().all();
}

template <typename Derived>
void RequireFinite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!AllFinite(m)) {
    throw Error(ErrorCode::kNonFiniteEntry,
                std::string(what) + " contains a non-finite entry");
  }
}

/// Max-abs entry of M^T M - I.
template <typename Derived>
typename Derived::Scalar OrthogonalityDefect(
    const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.cols() == 0) return Scalar(0);
  const Matrix<Scalar> gram = m.transpose() * m;
  return (gram - Matrix<Scalar>::Identity(m.cols(), m.cols()))
      .cwiseAbs()
      .maxCoeff();
}

template <typename Scalar_>
class OrthogonalMatrix;

template <typename Derived>
OrthogonalMatrix<typename Derived::Scalar> ValidateOrthogonal(
    const Eigen::MatrixBase<Derived>& m,
    typename Derived::Scalar tol =
        typename Derived::Scalar(kDefaultOrthogonalityTol));

// A square matrix that has passed ValidateOrthogonal. The defect is kept so
// callers can report how far from exact orthogonality the input was.
template <typename Scalar_>
class OrthogonalMatrix {
 public:
  using Scalar = Scalar_;

  const Matrix<Scalar>& matrix() const { return matrix_; }
  Scalar orthogonality_defect() const { return defect_; }
  Index dim() const { return matrix_.rows(); }

 private:
  OrthogonalMatrix(Matrix<Scalar> m, Scalar defect)
      : matrix_(std::move(m)), defect_(defect) {}

  template <typename Derived>
  friend OrthogonalMatrix<typename Derived::Scalar> ValidateOrthogonal(
      const Eigen::MatrixBase<Derived>& m, typename Derived::Scalar tol);

  Matrix<Scalar> matrix_;
  Scalar defect_;
};

template <typename Derived>
OrthogonalMatrix<typename Derived::Scalar> ValidateOrthogonal(
    const Eigen::MatrixBase<Derived>& m, typename Derived::Scalar tol) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::kNotSquare,
                "matrix is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + ", expected square");
  }
  RequireFinite(m, "matrix");
  const Scalar defect = OrthogonalityDefect(m);
  if (!(defect <= tol)) {
    throw Error(ErrorCode::kNotOrthogonal,
                "matrix is not orthogonal: max|Q^T Q - I| = " +
                    std::to_string(static_cast<double>(defect)),
                static_cast<double>(defect));
  }
  return OrthogonalMatrix<Scalar>(Matrix<Scalar>(m), defect);
}

// A = Q + a b^T kept in factored form. An empty `q` stands for the identity
// and allocates no n x n storage.
template <typename Scalar_>
class RankOneUpdatedOrthogonal {
 public:
  using Scalar = Scalar_;

  RankOneUpdatedOrthogonal(Vector<Scalar> a, Vector<Scalar> b)
      : a_(std::move(a)), b_(std::move(b)) {
    Check();
  }

  RankOneUpdatedOrthogonal(OrthogonalMatrix<Scalar> q, Vector<Scalar> a,
                           Vector<Scalar> b)
      : q_(std::move(q)), a_(std::move(a)), b_(std::move(b)) {
    Check();
  }

  Index dim() const { return a_.size(); }
  bool is_identity() const { return !q_.has_value(); }
  const std::optional<OrthogonalMatrix<Scalar>>& q() const { return q_; }
  const Vector<Scalar>& a() const { return a_; }
  const Vector<Scalar>& b() const { return b_; }

  /// Q^T v (a copy of v for the identity).
  Vector<Scalar> ApplyQTranspose(const Vector<Scalar>& v) const {
    if (is_identity()) return v;
    return q_->matrix().transpose() * v;
  }

  /// Q v (a copy of v for the identity).
  Vector<Scalar> ApplyQ(const Vector<Scalar>& v) const {
    if (is_identity()) return v;
    return q_->matrix() * v;
  }

 private:
  void Check() const {
    if (a_.size() == 0) {
      throw Error(ErrorCode::kDimensionMismatch, "dimension must be >= 1");
    }
    if (b_.size() != a_.size() || (q_ && q_->dim() != a_.size())) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "Q, a and b must share one dimension");
    }
    RequireFinite(a_, "a");
    RequireFinite(b_, "b");
  }

  std::optional<OrthogonalMatrix<Scalar>> q_;
  Vector<Scalar> a_;
  Vector<Scalar> b_;
};

// (||a||, ||b||, a^T Q b). These three numbers fix every singular value of A.
template <typename Scalar>
struct InvariantScalars {
  Scalar alpha{0};
  Scalar beta{0};
  Scalar gamma{0};

  /// ||a|| ||b||, which bounds |gamma|.
  Scalar product() const { return alpha * beta; }
};

template <typename Scalar>
InvariantScalars<Scalar> ComputeInvariantScalars(
    const RankOneUpdatedOrthogonal<Scalar>& m) {
  InvariantScalars<Scalar> s;
  s.alpha = m.a().norm();
  s.beta = m.b().norm();
  s.gamma = m.is_identity() ? m.a().dot(m.b())
                            : m.ApplyQTranspose(m.a()).dot(m.b());
  if (!std::isfinite(static_cast<double>(s.alpha)) ||
      !std::isfinite(static_cast<double>(s.beta)) ||
      !std::isfinite(static_cast<double>(s.gamma))) {
    throw Error(ErrorCode::kNonFiniteEntry, "invariant scalars overflowed");
  }
  return s;
}

/// Dense Q + a b^T.
template <typename Scalar>
Matrix<Scalar> Materialize(const RankOneUpdatedOrthogonal<Scalar>& m) {
  Matrix<Scalar> out = m.a() * m.b().transpose();
  if (m.is_identity()) {
    out.diagonal().array() += Scalar(1);
  } else {
    out += m.q()->matrix();
  }
  return out;
}

// Explicit A = U diag(sigma) V^T with sigma nonincreasing.
template <typename Scalar>
struct FullSvd {
  Matrix<Scalar> u;
  Vector<Scalar> sigma;
  Matrix<Scalar> v;
};

/// ||A - U diag(sigma) V^T||_F.
template <typename Derived, typename Scalar = typename Derived::Scalar>
Scalar ReconstructionError(const Eigen::MatrixBase<Derived>& a,
                           const FullSvd<Scalar>& svd) {
  return (a - svd.u * svd.sigma.asDiagonal() * svd.v.transpose()).norm();
}

}  // namespace orthsvd

#endif  // ORTHSVD_CORE_HPP_
