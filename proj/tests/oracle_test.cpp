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

#include "orthsvd/oracle.hpp"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "orthsvd/closed_form.hpp"

namespace orthsvd {
namespace {

using Mat = Matrix<double>;
using Vec = Vector<double>;

// ----- Jacobi oracle --------------------------------------------------------

TEST(JacobiSvdTest, Diagonal) {
  Mat a(2, 2);
  a << 2, 0, 0, 1;
  const auto svd = JacobiSvd(a);
  EXPECT_EQ(svd.sigma(0), 2.0);
  EXPECT_EQ(svd.sigma(1), 1.0);
}

TEST(JacobiSvdTest, Swap) {
  Mat a(2, 2);
  a << 0, 1, 1, 0;
  const auto svd = JacobiSvd(a);
  EXPECT_EQ(svd.sigma, Vec::Ones(2));
}

TEST(JacobiSvdTest, ShearFromCharacteristicPolynomial) {
  Mat a(2, 2);
  a << 1, 1, 0, 1;
  const auto svd = JacobiSvd(a);
  // A^T A = [[1, 1], [1, 2]] has eigenvalues (3 +- sqrt 5) / 2.
  EXPECT_NEAR(svd.sigma(0), (1 + std::sqrt(5.0)) / 2, 1e-15);
  EXPECT_NEAR(svd.sigma(1), (std::sqrt(5.0) - 1) / 2, 1e-15);
  EXPECT_LE(ReconstructionError(a, svd), 1e-15);
}

TEST(JacobiSvdTest, AgreesWithEigenBdcsvd) {
  Rng rng(5);
  for (Index n : {1, 2, 3, 5, 17, 40}) {
    for (int k = 0; k < 5; ++k) {
      Mat a(n, n);
      for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) a(i, j) = rng.Gaussian();
      }
      if (k == 4 && n > 1) a.col(n - 1) = a.col(0);  // rank deficient
      const auto svd = JacobiSvd(a);
      const Eigen::BDCSVD<Mat> ref(a);
      EXPECT_LE((svd.sigma - ref.singularValues()).cwiseAbs().maxCoeff(),
                1e-12 * std::max(1.0, ref.singularValues()(0)));
      EXPECT_LE(ReconstructionError(a, svd), 1e-12 * std::max(1.0, a.norm()));
      EXPECT_LE(OrthogonalityDefect(svd.u), 1e-12);
      EXPECT_LE(OrthogonalityDefect(svd.v), 1e-12);
    }
  }
}

TEST(JacobiSvdTest, ZeroMatrixGetsOrthogonalU) {
  const auto svd = JacobiSvd(Mat(Mat::Zero(3, 3)));
  EXPECT_EQ(svd.sigma, Vec::Zero(3));
  EXPECT_LE(OrthogonalityDefect(svd.u), 1e-15);
}

TEST(JacobiSvdTest, Errors) {
  try {
    JacobiSvd(Mat(Mat::Ones(2, 3)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotSquare);
  }
  JacobiConfig bad;
  bad.max_sweeps = 0;
  EXPECT_THROW(JacobiSvd(Mat(Mat::Identity(2, 2)), bad), Error);
  Mat a(3, 3);
  a << 1, 2, 3, 4, 5, 6, 7, 8, 10;
  JacobiConfig tiny;
  tiny.max_sweeps = 1;
  try {
    JacobiSvd(a, tiny);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoConvergence);
  }
}

// ----- Random orthogonal matrices ------------------------------------------

TEST(RandomOrthogonalTest, OneByOneIsPlusOrMinusOne) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_EQ(std::abs(RandomOrthogonal(1, seed).matrix()(0, 0)), 1.0);
  }
}

TEST(RandomOrthogonalTest, OrthogonalAndDeterministic) {
  const auto q1 = RandomOrthogonal(8, 42);
  const auto q2 = RandomOrthogonal(8, 42);
  EXPECT_LE(OrthogonalityDefect(q1.matrix()), 1e-12 * 8);
  EXPECT_EQ(q1.matrix(), q2.matrix());
  EXPECT_NE(q1.matrix(), RandomOrthogonal(8, 43).matrix());
}

TEST(RandomOrthogonalTest, FirstEntryIsSymmetricAboutZero) {
  int positive = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    positive += RandomOrthogonal(3, seed).matrix()(0, 0) > 0;
  }
  EXPECT_GT(positive, 150);
  EXPECT_LT(positive, 250);
}

// ----- Random numbers -------------------------------------------------------

TEST(RngTest, DeterministicAndInRange) {
  Rng a(9), b(9);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.Uniform();
    EXPECT_EQ(u, b.Uniform());
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const double l = a.LogUniform(1e-3, 1e3);
    b.LogUniform(1e-3, 1e3);
    EXPECT_GE(l, 1e-3 * (1 - 1e-15));
    EXPECT_LE(l, 1e3 * (1 + 1e-15));
    const auto k = a.Below(7);
    b.Below(7);
    EXPECT_LT(k, 7u);
  }
}

TEST(RngTest, GaussianMoments) {
  Rng rng(1);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double g = rng.Gaussian();
    sum += g;
    sq += g * g;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(RngTest, UnitVectors) {
  Rng rng(2);
  for (Index n : {1, 2, 5}) {
    const Vec u = rng.UnitVector(n);
    EXPECT_NEAR(u.norm(), 1.0, 1e-15);
    if (n > 1) {
      const Vec w = rng.UnitVectorOrthogonalTo(u);
      EXPECT_NEAR(w.norm(), 1.0, 1e-15);
      EXPECT_NEAR(u.dot(w), 0.0, 1e-15);
    }
  }
}

TEST(MixSeedsTest, DistinctInputsGiveDistinctSeeds) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 30; ++a) {
    for (std::uint64_t b = 0; b < 30; ++b) seen.insert(MixSeeds(a, b));
  }
  EXPECT_EQ(seen.size(), 900u);
  EXPECT_NE(MixSeeds(1, 2), MixSeeds(2, 1));
}

// ----- Instance sampling ----------------------------------------------------

TEST(SampleInstanceTest, ReproducibleAndWithinScaleRange) {
  InstanceDistribution dist;
  dist.dim = 3;
  const auto m1 = SampleInstance(dist, 123);
  const auto m2 = SampleInstance(dist, 123);
  EXPECT_EQ(m1.a(), m2.a());
  EXPECT_EQ(m1.b(), m2.b());
  EXPECT_TRUE(m1.is_identity());
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto s = ComputeInvariantScalars(SampleInstance(dist, seed));
    EXPECT_GE(s.alpha, 1e-3 * (1 - 1e-12));
    EXPECT_LE(s.alpha, 1e3 * (1 + 1e-12));
    EXPECT_GE(s.beta, 1e-3 * (1 - 1e-12));
    EXPECT_LE(s.beta, 1e3 * (1 + 1e-12));
  }
}

TEST(SampleInstanceTest, SingularPairHitsMinusOne) {
  InstanceDistribution dist;
  dist.dim = 4;
  dist.q_mode = QMode::kHaar;
  dist.vector_mode = VectorMode::kSingularPair;
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = ComputeInvariantScalars(SampleInstance(dist, seed));
    hits += std::abs(1 + s.gamma) <= 1e-12;
  }
  EXPECT_GE(hits, 90);
}

TEST(SampleInstanceTest, ParallelPairHasZeroRejection) {
  InstanceDistribution dist;
  dist.dim = 2;
  dist.vector_mode = VectorMode::kParallelPair;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto m = SampleInstance(dist, seed);
    const auto sp = ComputeSpectrum(m);
    EXPECT_LE(sp.rejection, 1e-15 * sp.scalars.product());
    EXPECT_EQ(sp.branch, Branch::kParallel);
  }
}

TEST(SampleInstanceTest, NearParallelRejectionMatchesEpsilon) {
  InstanceDistribution dist;
  dist.dim = 5;
  dist.q_mode = QMode::kPermutation;
  dist.vector_mode = VectorMode::kNearParallel;
  dist.epsilon = 1e-6;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto sp = ComputeSpectrum(SampleInstance(dist, seed));
    const double relative = sp.rejection / sp.scalars.product();
    EXPECT_NEAR(relative, 1e-6, 1e-9);
    EXPECT_EQ(sp.branch, Branch::kNonParallel);
  }
}

TEST(SampleInstanceTest, PermutationModeUsesPermutationMatrix) {
  InstanceDistribution dist;
  dist.dim = 6;
  dist.q_mode = QMode::kPermutation;
  const auto m = SampleInstance(dist, 4);
  const Mat& q = m.q()->matrix();
  EXPECT_EQ(q.cwiseAbs().sum(), 6.0);
  EXPECT_EQ(q.colwise().sum(), Mat::Ones(1, 6));
  EXPECT_EQ(q.rowwise().sum(), Vec::Ones(6));
}

TEST(SampleInstanceTest, ZeroModeHasZeroA) {
  InstanceDistribution dist;
  dist.vector_mode = VectorMode::kZero;
  const auto m = SampleInstance(dist, 1);
  EXPECT_EQ(m.a(), Vec::Zero(2));
  EXPECT_EQ(ComputeSpectrum(m).branch, Branch::kZeroVector);
}

TEST(SampleInstanceTest, InvalidDistributions) {
  InstanceDistribution dist;
  dist.dim = 1;
  dist.vector_mode = VectorMode::kSingularPair;
  EXPECT_THROW(SampleInstance(dist, 0), Error);
  dist = {};
  dist.scale_lo = 0;
  EXPECT_THROW(dist.Validate(), Error);
  dist = {};
  dist.epsilon = -1;
  EXPECT_THROW(dist.Validate(), Error);
}

TEST(ModeNamesTest, RoundTrip) {
  for (QMode q : kAllQModes) EXPECT_EQ(ParseQMode(QModeName(q)), q);
  for (VectorMode v : kAllVectorModes) {
    EXPECT_EQ(ParseVectorMode(VectorModeName(v)), v);
  }
  EXPECT_THROW(ParseQMode("diagonal"), Error);
  EXPECT_THROW(ParseVectorMode("uniform"), Error);
}

// ----- Closed form against the oracle ---------------------------------------

TEST(OracleAgreementTest, AllModes) {
  for (QMode q : kAllQModes) {
    for (VectorMode v : kAllVectorModes) {
      for (Index n : {2, 4, 12}) {
        InstanceDistribution dist;
        dist.dim = n;
        dist.q_mode = q;
        dist.vector_mode = v;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
          const auto m = SampleInstance(dist, seed);
          const Vec closed = ComputeSpectrum(m).SingularValues();
          const Vec dense = JacobiSvd(Materialize(m)).sigma;
          EXPECT_LE((closed - dense).cwiseAbs().maxCoeff(), 1e-8)
              << QModeName(q) << " " << VectorModeName(v) << " n=" << n
              << " seed=" << seed;
        }
      }
    }
  }
}

}  // namespace
}  // namespace orthsvd
