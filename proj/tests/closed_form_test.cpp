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

#include "orthsvd/closed_form.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "orthsvd/oracle.hpp"

namespace orthsvd {
namespace {

using Mat = Matrix<double>;
using Vec = Vector<double>;

constexpr double kPhi = std::numbers::phi;
const double kSqrt5 = std::sqrt(5.0);

Vec E(Index n, Index k) { return Vec::Unit(n, k); }

RankOneUpdatedOrthogonal<double> Identity(const Vec& a, const Vec& b) {
  return RankOneUpdatedOrthogonal<double>(a, b);
}

NormalizedPair<double> Normalize(const Vec& a, const Vec& b) {
  const auto m = Identity(a, b);
  return NormalizePair(ComputeInvariantScalars(m), b, a);
}

// ----- NormalizePair -------------------------------------------------------

TEST(NormalizePairTest, AxisAligned) {
  const auto p = Normalize(2.0 * E(2, 0), E(2, 1));
  EXPECT_EQ(p.x, E(2, 0));
  EXPECT_EQ(p.y, 2.0 * E(2, 1));
  EXPECT_EQ(p.c, 0.0);
  EXPECT_EQ(p.t, 2.0);
}

TEST(NormalizePairTest, ParallelUnit) {
  const auto p = Normalize(E(3, 0), E(3, 0));
  EXPECT_EQ(p.x, E(3, 0));
  EXPECT_EQ(p.y, E(3, 0));
  EXPECT_EQ(p.c, 1.0);
  EXPECT_EQ(p.t, 1.0);
}

TEST(NormalizePairTest, ZeroAIsRejected) {
  try {
    Normalize(Vec::Zero(2), E(2, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroVector);
  }
}

// ----- Special eigenvalues and mixing coefficients -------------------------

TEST(SpecialEigenvaluesTest, ShearGivesGoldenSquares) {
  const auto ev = ComputeSpecialEigenvalues(0.0, 1.0);
  EXPECT_NEAR(ev.lambda1, (3 + kSqrt5) / 2, 1e-14);
  EXPECT_NEAR(ev.lambda2, (3 - kSqrt5) / 2, 1e-14);
  EXPECT_NEAR(ev.lambda1, 2.6180339887, 1e-10);
  EXPECT_NEAR(ev.lambda2, 0.3819660113, 1e-10);
}

TEST(SpecialEigenvaluesTest, ParallelExamples) {
  auto ev = ComputeSpecialEigenvalues(1.0, 1.0);
  EXPECT_EQ(ev.lambda1, 4.0);
  EXPECT_EQ(ev.lambda2, 1.0);
  ev = ComputeSpecialEigenvalues(-1.0, 1.0);
  EXPECT_EQ(ev.lambda1, 1.0);
  EXPECT_EQ(ev.lambda2, 0.0);
}

TEST(SpecialEigenvaluesTest, CauchySchwarzViolationIsDomainError) {
  try {
    ComputeSpecialEigenvalues(2.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDomainError);
  }
  EXPECT_THROW(ComputeSpecialEigenvalues(0.0, -1.0), Error);
  EXPECT_NO_THROW(ComputeSpecialEigenvalues(-1.0 - 1e-15, 1.0));
}

TEST(SpecialEigenvaluesTest, OrderedAroundOne) {
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    const double t = rng.LogUniform(1e-6, 1e6);
    const double c = t * (2 * rng.Uniform() - 1);
    const auto ev = ComputeSpecialEigenvalues(c, t);
    EXPECT_GE(ev.lambda1, 1.0);
    EXPECT_LE(ev.lambda2, 1.0);
    EXPECT_GE(ev.lambda2, 0.0);
  }
}

TEST(MixingCoefficientsTest, ShearSolvesQuadratic) {
  const auto m = ComputeMixingCoefficients(0.0, 1.0);
  EXPECT_NEAR(m.s_plus, (1 + kSqrt5) / 2, 1e-15);
  EXPECT_NEAR(m.s_minus, (1 - kSqrt5) / 2, 1e-15);
}

TEST(MixingCoefficientsTest, SingularCase) {
  const auto m = ComputeMixingCoefficients(-1.0, 1.0);
  EXPECT_EQ(m.s_plus, 1.0);
  EXPECT_EQ(m.s_minus, 0.0);
}

TEST(MixingCoefficientsTest, ReproduceEigenvalues) {
  auto check = [](double c, double t) {
    const auto m = ComputeMixingCoefficients(c, t);
    const auto ev = ComputeSpecialEigenvalues(c, t);
    EXPECT_NEAR(1 + c + m.s_plus * t * t, ev.lambda1, 1e-12 * ev.lambda1)
        << c << " " << t;
    // The quadratic s^2 - s - (1 + c) / t^2 vanishes at both roots.
    for (double s : {m.s_plus, m.s_minus}) {
      EXPECT_NEAR(s * s - s - (1 + c) / (t * t), 0.0,
                  1e-12 * std::max(1.0, s * s));
    }
  };
  check(1.0, 1.0);
  check(0.0, 1.0);
  check(-0.5, 3.0);
  check(2.0, 5.0);
  EXPECT_THROW(ComputeMixingCoefficients(0.0, 0.0), Error);
}

// ----- Spectrum and the main identity --------------------------------------

TEST(SpectrumTest, ShearInThreeDimensions) {
  const auto sp = ComputeSpectrum(Identity(E(3, 0), E(3, 1)));
  EXPECT_NEAR(sp.sigma_max, 1.6180339887, 1e-10);
  EXPECT_NEAR(sp.sigma_min, 0.6180339887, 1e-10);
  EXPECT_NEAR(sp.sigma_max, kPhi, 1e-15);
  EXPECT_NEAR(sp.sigma_min, 1 / kPhi, 1e-15);
  EXPECT_EQ(sp.unit_multiplicity, 1);
  EXPECT_EQ(sp.branch, Branch::kNonParallel);
  EXPECT_EQ(sp.sign_term, 1);
}

TEST(SpectrumTest, ParallelStretch) {
  const auto sp = ComputeSpectrum(Identity(E(4, 0), 2.0 * E(4, 0)));
  EXPECT_EQ(sp.sigma_max, 3.0);
  EXPECT_EQ(sp.sigma_min, 1.0);
  EXPECT_EQ(sp.unit_multiplicity, 3);
  EXPECT_EQ(sp.branch, Branch::kParallel);
  Vec expected = Vec::Ones(4);
  expected(0) = 3.0;
  EXPECT_EQ(sp.SingularValues(), expected);
}

TEST(SpectrumTest, SingularParallelUsesPlusSign) {
  const auto sp = ComputeSpectrum(Identity(E(2, 0), -E(2, 0)));
  EXPECT_EQ(sp.sigma_max, 1.0);
  EXPECT_EQ(sp.sigma_min, 0.0);
  EXPECT_EQ(sp.branch, Branch::kParallel);
  EXPECT_EQ(sp.sign_term, 1);
}

TEST(SpectrumTest, ZeroUpdate) {
  const auto sp = ComputeSpectrum(Identity(Vec::Zero(3), E(3, 0)));
  EXPECT_EQ(sp.branch, Branch::kZeroVector);
  EXPECT_EQ(sp.sigma_max, 1.0);
  EXPECT_EQ(sp.sigma_min, 1.0);
  EXPECT_EQ(sp.unit_multiplicity, 3);
}

TEST(SpectrumTest, OneByOneReportsTrueValue) {
  Vec a(1), b(1);
  a << 2.0;
  b << -1.5;
  const auto sp = ComputeSpectrum(Identity(a, b));
  EXPECT_EQ(sp.sigma_max, 2.0);
  EXPECT_EQ(sp.sigma_min, 2.0);
  EXPECT_EQ(sp.unit_multiplicity, 0);
  EXPECT_EQ(sp.SingularValues()(0), 2.0);
}

TEST(TheoremResidualTest, Examples) {
  EXPECT_EQ(TheoremResidual(Identity(Vec::Zero(3), E(3, 2))), 0.0);
  EXPECT_LE(TheoremResidual(Identity(E(2, 0), E(2, 1))), 1e-12);
  const auto sp = ComputeSpectrum(Identity(E(3, 0), -3.0 * E(3, 0)));
  EXPECT_EQ(sp.sigma_max, 2.0);
  EXPECT_EQ(sp.sigma_min, 1.0);
  EXPECT_EQ(sp.sign_term, -1);
  EXPECT_EQ(TheoremResidual(sp), 0.0);
}

TEST(TheoremResidualTest, HoldsAcrossRandomInstances) {
  for (QMode q : kAllQModes) {
    for (VectorMode v : kAllVectorModes) {
      for (Index n : {2, 3, 7, 20}) {
        InstanceDistribution dist;
        dist.dim = n;
        dist.q_mode = q;
        dist.vector_mode = v;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
          const auto m = SampleInstance(dist, seed);
          const auto sp = ComputeSpectrum(m);
          EXPECT_LE(TheoremResidual(sp),
                    1e-10 * std::max(1.0, sp.scalars.product()));
          EXPECT_GE(sp.sigma_max, 1.0);
          EXPECT_LE(sp.sigma_min, 1.0);
          EXPECT_GE(sp.sigma_min, 0.0);
        }
      }
    }
  }
}

TEST(SpectrumTest, ScaleCovariance) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    InstanceDistribution dist;
    dist.dim = 6;
    dist.q_mode = QMode::kHaar;
    const auto m = SampleInstance(dist, seed);
    const double kappa = std::exp2(static_cast<double>(seed % 13) - 6.0) * 1.7;
    const auto scaled = RankOneUpdatedOrthogonal<double>(
        *m.q(), kappa * m.a(), m.b() / kappa);
    const auto s1 = ComputeSpectrum(m);
    const auto s2 = ComputeSpectrum(scaled);
    EXPECT_NEAR(s1.sigma_max, s2.sigma_max, 1e-13 * s1.sigma_max);
    EXPECT_NEAR(s1.sigma_min, s2.sigma_min, 1e-13);
  }
}

TEST(SpectrumTest, FactoringOutQPreservesSpectrum) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    InstanceDistribution dist;
    dist.dim = 5;
    dist.q_mode = QMode::kHaar;
    dist.vector_mode = seed % 2 ? VectorMode::kGaussian : VectorMode::kNearParallel;
    const auto m = SampleInstance(dist, seed);
    const Vec qta = m.q()->matrix().transpose() * m.a();
    const auto s1 = ComputeSpectrum(m);
    const auto s2 = ComputeSpectrum(Identity(qta, m.b()));
    EXPECT_NEAR(s1.sigma_max, s2.sigma_max, 1e-13 * s1.sigma_max);
    EXPECT_NEAR(s1.sigma_min, s2.sigma_min, 1e-13);
  }
}

TEST(SpectrumTest, SingularInstancesHaveZeroSmallestValue) {
  InstanceDistribution dist;
  dist.dim = 4;
  dist.q_mode = QMode::kHaar;
  dist.vector_mode = VectorMode::kSingularPair;
  int exact = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto m = SampleInstance(dist, seed);
    const auto sp = ComputeSpectrum(m);
    const double p = 1 + sp.scalars.gamma;
    if (std::abs(p) > 1e-12) continue;
    ++exact;
    EXPECT_LE(sp.sigma_min, 1e-10);
    // Either sign convention satisfies the identity.
    const double t = sp.scalars.product();
    EXPECT_LE(std::abs(sp.sigma_max - sp.sigma_min - t), 1e-10 * std::max(1.0, t));
    EXPECT_LE(std::abs(sp.sigma_max + sp.sigma_min - t), 1e-10 * std::max(1.0, t));
  }
  EXPECT_GT(exact, 100);
}

TEST(SpectrumTest, ProductIdentity) {
  InstanceDistribution dist;
  dist.dim = 9;
  dist.q_mode = QMode::kPermutation;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto sp = ComputeSpectrum(SampleInstance(dist, seed));
    const double p = std::abs(1 + sp.scalars.gamma);
    EXPECT_NEAR(sp.sigma_max * std::sqrt(sp.lambda2), p, 1e-10 * p);
  }
}

TEST(SignOfTest, ZeroIsPositive) {
  EXPECT_EQ(SignOf(0.0), 1);
  EXPECT_EQ(SignOf(-0.0), 1);
  EXPECT_EQ(SignOf(-1e-300), -1);
  EXPECT_EQ(SignOf(2.0), 1);
}

TEST(BranchTest, ParallelToleranceControlsDetection) {
  Vec b = E(3, 0);
  b(1) = 1e-14;
  EXPECT_EQ(ComputeSpectrum(Identity(E(3, 0), b)).branch, Branch::kParallel);
  EXPECT_EQ(ComputeSpectrum(Identity(E(3, 0), b), 0.0).branch,
            Branch::kNonParallel);
  EXPECT_STREQ(BranchName(Branch::kNonParallel), "non_parallel");
}

// ----- Eigenpairs and full SVD ---------------------------------------------

TEST(SpecialEigenpairsTest, AreEigenpairsOfGram) {
  for (VectorMode v : kAllVectorModes) {
    InstanceDistribution dist;
    dist.dim = 6;
    dist.q_mode = QMode::kHaar;
    dist.vector_mode = v;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const auto m = SampleInstance(dist, seed);
      const Mat a = Materialize(m);
      const Mat gram = a.transpose() * a;
      const auto pairs = ComputeSpecialEigenpairs(m);
      const auto sp = ComputeSpectrum(m);
      for (const auto& pair : pairs) {
        EXPECT_NEAR(pair.v.norm(), 1.0, 1e-14);
        const double r = (gram * pair.v - pair.lambda * pair.v).norm();
        EXPECT_LE(r, 1e-12 * std::max(1.0, sp.lambda1));
      }
      const std::size_t expected =
          sp.branch == Branch::kZeroVector ? 0
          : sp.branch == Branch::kParallel ? 1
                                           : 2;
      EXPECT_EQ(pairs.size(), expected);
    }
  }
}

TEST(FullSvdTest, IdentityForZeroVectors) {
  const auto svd = ComputeFullSvd(Identity(Vec::Zero(4), Vec::Zero(4)));
  EXPECT_EQ(svd.u, Mat::Identity(4, 4));
  EXPECT_EQ(svd.v, Mat::Identity(4, 4));
  EXPECT_EQ(svd.sigma, Vec::Ones(4));
}

TEST(FullSvdTest, ZeroUpdateReturnsQ) {
  const auto q = RandomOrthogonal(3, 5);
  const auto svd = ComputeFullSvd(
      RankOneUpdatedOrthogonal<double>(q, Vec::Zero(3), E(3, 1)));
  EXPECT_EQ(svd.u, q.matrix());
  EXPECT_EQ(svd.v, Mat::Identity(3, 3));
}

TEST(FullSvdTest, ReconstructsEveryMode) {
  for (QMode q : kAllQModes) {
    for (VectorMode v : kAllVectorModes) {
      for (Index n : {1, 2, 3, 10}) {
        InstanceDistribution dist;
        dist.dim = n;
        dist.q_mode = q;
        dist.vector_mode = v;
        if (n == 1 && (v == VectorMode::kNearParallel ||
                       v == VectorMode::kSingularPair)) {
          continue;
        }
        for (std::uint64_t seed = 0; seed < 15; ++seed) {
          const auto m = SampleInstance(dist, seed);
          const Mat a = Materialize(m);
          const auto svd = ComputeFullSvd(m);
          EXPECT_LE(ReconstructionError(a, svd), 1e-9 * std::max(1.0, a.norm()));
          EXPECT_LE(OrthogonalityDefect(svd.u), 1e-12);
          EXPECT_LE(OrthogonalityDefect(svd.v), 1e-12);
          for (Index i = 1; i < n; ++i) {
            EXPECT_GE(svd.sigma(i - 1), svd.sigma(i));
          }
        }
      }
    }
  }
}

TEST(FullSvdTest, LongDoubleInstantiation) {
  using LVec = Vector<long double>;
  LVec a = LVec::Unit(3, 0), b = LVec::Unit(3, 1);
  const RankOneUpdatedOrthogonal<long double> m(a, b);
  const auto sp = ComputeSpectrum(m);
  const long double phi = (1.0L + std::sqrt(5.0L)) / 2.0L;
  EXPECT_NEAR(static_cast<double>(sp.sigma_max - phi), 0.0, 1e-18);
  const auto svd = ComputeFullSvd(m);
  const Matrix<long double> dense = Materialize(m);
  EXPECT_LE(static_cast<double>(ReconstructionError(dense, svd)), 1e-17);
  EXPECT_LE(static_cast<double>(TheoremResidual(sp)), 1e-18);
}

// ----- Rank revelation ------------------------------------------------------

TEST(RankRevelationTest, SmallExamples) {
  EXPECT_LE(RankRevelationResidual(Identity(E(2, 0), E(2, 1))), 1e-14);
  EXPECT_LE(RankRevelationResidual(Identity(E(3, 0), E(3, 0))), 1e-14);
  try {
    RankRevelationResidual(Identity(Vec::Zero(2), 2.0 * E(2, 0)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroVector);
  }
}

TEST(RankRevelationTest, RandomIdentityInstances) {
  InstanceDistribution dist;
  dist.dim = 12;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto m = SampleInstance(dist, seed);
    const double t = ComputeInvariantScalars(m).product();
    EXPECT_LE(RankRevelationResidual(m), 1e-10 * std::max(1.0, t * t));
  }
}

// ----- Norm inequality ------------------------------------------------------

TEST(LemmaGapTest, Examples) {
  const Vec x = E(3, 0);
  auto g = ComputeLemmaGap(x, Vec(Vec::Zero(3)));
  EXPECT_EQ(g.upper_slack, 0.0);
  EXPECT_EQ(g.lower_slack, 0.0);
  g = ComputeLemmaGap(x, Vec(-x));
  EXPECT_EQ(g.upper_slack, 0.0);
  EXPECT_EQ(g.lower_slack, 2.0);
  g = ComputeLemmaGap(x, E(3, 1));
  EXPECT_NEAR(g.upper_slack, 1 + kSqrt5, 1e-15);
  EXPECT_NEAR(g.lower_slack, kSqrt5 - 1, 1e-15);
}

TEST(LemmaGapTest, MatchesDirectEvaluation) {
  Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    const Index n = 1 + static_cast<Index>(i % 6);
    const Vec x = rng.UnitVector(n);
    const Vec y = rng.LogUniform(1e-2, 1e2) * rng.UnitVector(n);
    const auto g = ComputeLemmaGap(x, y);
    const double xy2 = (x + y).squaredNorm();
    const double cross = y.norm() * (2 * x + y).norm();
    const double scale = 1 + xy2 + cross;
    EXPECT_NEAR(g.upper_slack, xy2 + cross - 1, 1e-14 * scale);
    EXPECT_NEAR(g.lower_slack, 1 - xy2 + cross, 1e-14 * scale);
  }
}

TEST(LemmaGapTest, StaysNonnegativeForHugeY) {
  const Vec x = E(2, 0);
  Vec y(2);
  y << -1e6, 1e-3;
  const auto g = ComputeLemmaGap(x, y);
  EXPECT_GE(g.upper_slack, 0.0);
  EXPECT_GE(g.lower_slack, 0.0);
}

TEST(LemmaGapTest, RejectsNonUnitX) {
  try {
    ComputeLemmaGap(Vec(2.0 * E(2, 0)), E(2, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotUnit);
  }
  EXPECT_THROW(ComputeLemmaGap(E(2, 0), E(3, 1)), Error);
}

}  // namespace
}  // namespace orthsvd
