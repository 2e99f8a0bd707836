// Copyright 2026 The qseq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qseq/errors.hpp"
#include "qseq/linalg.hpp"

namespace qseq {
namespace {

using testing::Mat;

TEST(TensorTest, IdentityTimesIdentity) {
  EXPECT_LT(frobenius_distance(tensor(identity(2), identity(2)), identity(4)), 1e-15);
}

TEST(TensorTest, PauliBlocks) {
  const ComplexMatrix zx = tensor(pauli_z(), pauli_x());
  Mat expected = Mat::Zero(4, 4);
  expected.topLeftCorner(2, 2) = pauli_x();
  expected.bottomRightCorner(2, 2) = -pauli_x();
  EXPECT_LT(frobenius_distance(zx, expected), 1e-15);
}

TEST(TensorTest, MatchesFourIndexLoops) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Mat a = testing::random_matrix(rng, 2, 2);
    const Mat b = testing::random_matrix(rng, 2, 3);
    EXPECT_LT(frobenius_distance(tensor(a, b), testing::kron_loops(a, b)), 1e-13);
  }
}

TEST(PartialTraceTest, ProductFactorizes) {
  std::mt19937 rng(3);
  const Mat a = testing::random_matrix(rng, 3, 3);
  const Mat b = testing::random_matrix(rng, 2, 2);
  const ComplexMatrix ab = tensor(a, b);
  EXPECT_LT(frobenius_distance(partial_trace(ab, 3, 2, Factor::kSecond), b.trace() * a),
            1e-12);
  EXPECT_LT(frobenius_distance(partial_trace(ab, 3, 2, Factor::kFirst), a.trace() * b),
            1e-12);
}

TEST(PartialTraceTest, MaximallyEntangledGivesIdentity) {
  Mat omega = Mat::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) omega(3 * i, 3 * j) = 1.0;
  EXPECT_LT(frobenius_distance(partial_trace(omega, 2, 2, Factor::kSecond), identity(2)),
            1e-15);
}

TEST(PartialTraceTest, MatchesLoopOracle) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Mat h = testing::random_hermitian(rng, 6);
    EXPECT_LT(frobenius_distance(partial_trace(h, 2, 3, Factor::kSecond),
                                 testing::trace_second_loops(h, 2, 3)),
              1e-13);
    EXPECT_LT(frobenius_distance(partial_trace(h, 2, 3, Factor::kFirst),
                                 testing::trace_first_loops(h, 2, 3)),
              1e-13);
  }
}

TEST(PartialTraceTest, RejectsWrongShape) {
  EXPECT_THROW(partial_trace(identity(5), 2, 2, Factor::kFirst), DimensionError);
}

TEST(HermEigTest, DiagonalAscending) {
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  const HermitianEigen e = herm_eig(d);
  EXPECT_NEAR(e.eigenvalues(0), 1.0, 1e-15);
  EXPECT_NEAR(e.eigenvalues(1), 3.0, 1e-15);
}

TEST(HermEigTest, PauliX) {
  const HermitianEigen e = herm_eig(pauli_x());
  EXPECT_NEAR(e.eigenvalues(0), -1.0, 1e-15);
  EXPECT_NEAR(e.eigenvalues(1), 1.0, 1e-15);
  const double r = 1.0 / std::sqrt(2.0);
  Mat minus(2, 1), plus(2, 1);
  minus << r, -r;
  plus << r, r;
  // Columns are fixed up to phase; the phase convention makes the first
  // largest entry real positive.
  EXPECT_LT((e.eigenvectors.col(0) - minus).norm(), 1e-12);
  EXPECT_LT((e.eigenvectors.col(1) - plus).norm(), 1e-12);
}

TEST(HermEigTest, RandomReconstruction) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat h = testing::random_hermitian(rng, 6);
    const HermitianEigen e = herm_eig(h);
    const Mat u = e.eigenvectors;
    const Mat rebuilt = u * e.eigenvalues.cast<Complex>().asDiagonal() * u.adjoint();
    EXPECT_LT(frobenius_distance(rebuilt, h), 1e-10);
    EXPECT_LT(isometry_error(u), 1e-12);
    for (Eigen::Index i = 1; i < e.eigenvalues.size(); ++i) {
      EXPECT_LE(e.eigenvalues(i - 1), e.eigenvalues(i));
    }
  }
}

TEST(HermEigTest, RejectsNonHermitian) {
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(herm_eig(m, 1e-9), InvalidArgument);
}

TEST(SqrtPsdTest, Examples) {
  EXPECT_LT(frobenius_distance(sqrt_psd(identity(3)), identity(3)), 1e-15);
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  Mat expected = Mat::Zero(2, 2);
  expected(0, 0) = 2.0;
  expected(1, 1) = 3.0;
  EXPECT_LT(frobenius_distance(sqrt_psd(d), expected), 1e-14);
  d(0, 0) = 0.9;
  d(1, 1) = 0.1;
  const ComplexMatrix root = sqrt_psd(d);
  EXPECT_LT(frobenius_distance(root * root, d), 1e-15);
}

TEST(SqrtPsdTest, SquaresBackOnRandomPsd) {
  std::mt19937 rng(23);
  const Mat g = testing::random_matrix(rng, 4, 4);
  const Mat p = g * g.adjoint();
  const ComplexMatrix root = sqrt_psd(p);
  EXPECT_LT(frobenius_distance(root * root, p), 1e-10);
  EXPECT_TRUE(is_psd(root));
}

TEST(SqrtPsdTest, ClipsTinyNegativesAndRejectsLargeOnes) {
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1e-12;
  EXPECT_NO_THROW(sqrt_psd(d, 1e-9));
  d(1, 1) = -1e-3;
  EXPECT_THROW(sqrt_psd(d, 1e-9), InvalidArgument);
}

TEST(IsPsdTest, Basics) {
  EXPECT_TRUE(is_psd(identity(2)));
  EXPECT_FALSE(is_psd(pauli_z()));
  EXPECT_NEAR(min_eigenvalue(pauli_z()), -1.0, 1e-15);
  Mat m = Mat::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_FALSE(is_psd(m));  // not Hermitian
}

TEST(RangeIsometryTest, RankTwoProjectorOfFour) {
  Mat p = Mat::Zero(4, 4);
  p(1, 1) = 0.5;
  p(3, 3) = 2.0;
  const ComplexMatrix r = range_isometry(p);
  ASSERT_EQ(r.cols(), 2);
  EXPECT_LT(isometry_error(r), 1e-14);
  // The range projector r r^dagger fixes p.
  EXPECT_LT(frobenius_distance(r * r.adjoint() * p, p), 1e-14);
  EXPECT_EQ(numerical_rank(p), 2u);
}

TEST(PseudoInverseTest, PenroseConditions) {
  std::mt19937 rng(29);
  const Mat a = testing::random_matrix(rng, 5, 2) * testing::random_matrix(rng, 2, 4);
  const ComplexMatrix ap = pseudo_inverse(a);
  EXPECT_LT(frobenius_distance(a * ap * a, a), 1e-10);
  EXPECT_LT(frobenius_distance(ap * a * ap, ap), 1e-10);
  EXPECT_LT(frobenius_distance((a * ap).adjoint(), a * ap), 1e-10);
  EXPECT_LT(frobenius_distance((ap * a).adjoint(), ap * a), 1e-10);
}

TEST(ProjectPsdTest, ClipsNegativeSpectrum) {
  const ComplexMatrix p = project_psd(pauli_z());
  EXPECT_LT(frobenius_distance(p, basis_projector(2, 0)), 1e-15);
  EXPECT_TRUE(is_psd(p));
}

TEST(SumTest, RejectsEmptyAndMismatched) {
  EXPECT_THROW(sum(std::vector<ComplexMatrix>{}), DimensionError);
  EXPECT_THROW(sum(std::vector<ComplexMatrix>{identity(2), identity(3)}), DimensionError);
  EXPECT_LT(frobenius_distance(sum(std::vector<ComplexMatrix>{pauli_x(), pauli_x()}),
                               2.0 * pauli_x()),
            1e-15);
}

TEST(AdjointTest, InvolutionAndKetProjector) {
  std::mt19937 rng(31);
  const Mat m = testing::random_matrix(rng, 3, 5);
  EXPECT_EQ(m.adjoint().adjoint(), m);
  EXPECT_LT(frobenius_distance(ket(3, 1) * ket(3, 1).adjoint(), basis_projector(3, 1)),
            1e-15);
  EXPECT_LT(frobenius_distance(pauli_x() * pauli_y(), Complex(0, 1) * pauli_z()), 1e-15);
}

}  // namespace
}  // namespace qseq
