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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qseq/channel.hpp"
#include "qseq/errors.hpp"

namespace qseq {
namespace {

using testing::Mat;
using testing::qubit_effect;

constexpr double kHalfPi = std::numbers::pi / 2.0;

Mat plus_state() { return Mat::Constant(2, 2, 0.5); }

// Choi matrix assembled entry by entry: sum_ij Lambda(|i><j|) (x) |i><j|.
Mat choi_oracle(const std::vector<Mat>& kraus, Eigen::Index d_in) {
  const Eigen::Index d_out = kraus.front().rows();
  Mat out = Mat::Zero(d_out * d_in, d_out * d_in);
  for (Eigen::Index i = 0; i < d_in; ++i) {
    for (Eigen::Index j = 0; j < d_in; ++j) {
      Mat eij = Mat::Zero(d_in, d_in);
      eij(i, j) = 1.0;
      out += testing::kron_loops(testing::kraus_sum(kraus, eij), eij);
    }
  }
  return out;
}

// Environment matrix E[i, j] = tr(K_i rho K_j^dagger).
Mat environment_oracle(const std::vector<Mat>& kraus, const Mat& rho) {
  const auto n = static_cast<Eigen::Index>(kraus.size());
  Mat e(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) e(i, j) = (kraus[i] * rho * kraus[j].adjoint()).trace();
  return e;
}

Eigen::VectorXd sorted_spectrum(const Mat& h, Eigen::Index keep) {
  Eigen::SelfAdjointEigenSolver<Mat> es((h + h.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  Eigen::VectorXd v = es.eigenvalues();
  std::sort(v.data(), v.data() + v.size(), std::greater<>());
  return v.head(keep);
}

TEST(KrausChannelTest, ConstructorChecks) {
  EXPECT_THROW(KrausChannel(2, 2, {identity(3)}), DimensionError);
  EXPECT_THROW(KrausChannel(2, 2, {}), InvalidArgument);
  // Partition not exhaustive, then overlapping.
  std::vector<ComplexMatrix> k{basis_projector(2, 0), basis_projector(2, 1)};
  EXPECT_THROW(KrausChannel(2, 2, k, std::vector<Branch>{{{0}, {0}}}), InvalidArgument);
  EXPECT_THROW(KrausChannel(2, 2, k, std::vector<Branch>{{{0}, {0, 1}}, {{1}, {1}}}),
               InvalidArgument);
  EXPECT_NO_THROW(KrausChannel(2, 2, k, std::vector<Branch>{{{0}, {0}}, {{1}, {1}}}));
}

TEST(KrausChannelTest, TracePreservation) {
  EXPECT_TRUE(is_cptp(identity_channel(3)));
  const KrausChannel half(2, 2, {ComplexMatrix(0.5 * identity(2))});
  EXPECT_FALSE(is_cptp(half));
  EXPECT_NEAR(trace_preservation_error(half), 0.75 * std::sqrt(2.0), 1e-14);
}

TEST(ApplyTest, IdentityAndDephasing) {
  std::mt19937 rng(1);
  const Mat rho = testing::random_state(rng, 3);
  EXPECT_LT(frobenius_distance(qseq::apply(identity_channel(3), rho), rho), 1e-15);
  const KrausChannel dephase = luders(qubit_binary(1.0, xz_axis(0.0)));
  EXPECT_LT(frobenius_distance(qseq::apply(dephase, plus_state()), 0.5 * identity(2)), 1e-15);
}

TEST(ApplyTest, ClassicalChannelOfOrthogonalBinary) {
  const KrausChannel lb = classical_channel(qubit_binary(0.6, xz_axis(kHalfPi)));
  EXPECT_LT(frobenius_distance(qseq::apply(lb, basis_projector(2, 0)), 0.5 * identity(2)),
            1e-14);
}

TEST(ApplyTest, RejectsInvalidStates) {
  EXPECT_THROW(qseq::apply(identity_channel(2), identity(2)), InvalidArgument);
  EXPECT_THROW(qseq::apply(identity_channel(2), basis_projector(3, 0)), DimensionError);
  EXPECT_THROW(qseq::apply(identity_channel(2), ComplexMatrix(pauli_z() + identity(2) / 2.0)),
               InvalidArgument);
}

TEST(HeisenbergTest, UnitalAndLudersDamping) {
  const Povm a = qubit_binary(0.8, xz_axis(0.0));
  const KrausChannel lud = luders(a);
  EXPECT_LT(frobenius_distance(heisenberg_apply(lud, identity(2)), identity(2)), 1e-14);
  // Off-diagonals shrink by sqrt(1 - s^2) = 0.6.
  EXPECT_LT(frobenius_distance(heisenberg_apply(lud, qubit_effect(1.0, kHalfPi, 1)),
                               qubit_effect(0.6, kHalfPi, 1)),
            1e-14);
  for (std::size_t x = 0; x < a.size(); ++x) {
    EXPECT_LT(frobenius_distance(heisenberg_branch(lud, a.label(x), identity(2)), a.effect(x)),
              1e-14);
  }
}

TEST(HeisenbergTest, DualityOnRandomTriples) {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> dim(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const int d_in = dim(rng);
    const int d_out = dim(rng);
    const int count = std::max(dim(rng), (d_in + d_out - 1) / d_out);
    const auto kraus = testing::random_kraus(rng, d_in, d_out, count);
    const KrausChannel c(d_in, d_out, {kraus.begin(), kraus.end()});
    const Mat rho = testing::random_state(rng, d_in);
    const Mat t = testing::random_hermitian(rng, d_out);
    const Complex lhs = (qseq::apply(c, rho) * t).trace();
    const Complex rhs = (rho * heisenberg_apply(c, t)).trace();
    EXPECT_LT(std::abs(lhs - rhs), 1e-10);
    EXPECT_LT(frobenius_distance(qseq::apply(c, rho), testing::kraus_sum(kraus, rho)), 1e-12);
  }
}

TEST(ChoiTest, IdentityAndDepolarizing) {
  const ChoiMatrix j = choi(identity_channel(2));
  Mat omega = Mat::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) omega(3 * i, 3 * k) = 1.0;
  EXPECT_LT(frobenius_distance(j.matrix, omega), 1e-15);
  std::vector<ComplexMatrix> pauli{identity(2) / 2.0, pauli_x() / 2.0, pauli_y() / 2.0,
                                   pauli_z() / 2.0};
  const ChoiMatrix dep = choi(KrausChannel(2, 2, pauli));
  EXPECT_LT(frobenius_distance(dep.matrix, identity(4) / 2.0), 1e-15);
}

TEST(ChoiTest, RandomChannelsMatchOracleAndValidate) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto kraus = testing::random_kraus(rng, 3, 2, 3);
    const KrausChannel c(3, 2, {kraus.begin(), kraus.end()});
    const ChoiMatrix j = choi(c);
    EXPECT_LT(frobenius_distance(j.matrix, choi_oracle(kraus, 3)), 1e-12);
    EXPECT_TRUE(validate_choi(j, 1e-10));
    EXPECT_LT(frobenius_distance(partial_trace(j.matrix, 2, 3, Factor::kFirst), identity(3)),
              1e-10);
  }
}

TEST(LudersTest, KrausAreSquareRoots) {
  const KrausChannel lud = luders(qubit_binary(0.8, xz_axis(0.0)));
  ASSERT_EQ(lud.kraus().size(), 2u);
  Mat plus = Mat::Zero(2, 2), minus = Mat::Zero(2, 2);
  plus(0, 0) = std::sqrt(0.9);
  plus(1, 1) = std::sqrt(0.1);
  minus(0, 0) = std::sqrt(0.1);
  minus(1, 1) = std::sqrt(0.9);
  // Label order is (-1), (+1).
  EXPECT_LT(frobenius_distance(lud.kraus()[0], minus), 1e-14);
  EXPECT_LT(frobenius_distance(lud.kraus()[1], plus), 1e-14);
  const ComplexMatrix out = apply_branch(lud, Label{1}, identity(2) / 2.0);
  EXPECT_NEAR(out.trace().real(), 0.5, 1e-15);
}

TEST(LudersTest, SharpHeisenbergFormula) {
  std::mt19937 rng(9);
  const Povm a = qubit_binary(1.0, xz_axis(0.4));
  const KrausChannel lud = luders(a);
  const Mat t = testing::random_hermitian(rng, 2);
  Mat expected = Mat::Zero(2, 2);
  for (const ComplexMatrix& e : a.effects()) expected += e * t * e;
  EXPECT_LT(frobenius_distance(heisenberg_apply(lud, t), expected), 1e-13);
}

TEST(ClassicalChannelTest, TrivialIsConstant) {
  const KrausChannel c = classical_channel(trivial_povm(2));
  EXPECT_EQ(c.dim_out(), 1u);
  std::mt19937 rng(2);
  EXPECT_NEAR(qseq::apply(c, testing::random_state(rng, 2))(0, 0).real(), 1.0, 1e-14);
}

TEST(ClassicalChannelTest, OutcomeProbabilities) {
  std::mt19937 rng(12);
  const Povm b = observable_C(0.7);
  const KrausChannel c = classical_channel(b);
  EXPECT_TRUE(is_cptp(c));
  for (int trial = 0; trial < 10; ++trial) {
    const Mat rho = testing::random_state(rng, 2);
    const ComplexMatrix out = qseq::apply(c, rho);
    for (std::size_t y = 0; y < b.size(); ++y) {
      const auto i = static_cast<Eigen::Index>(y);
      EXPECT_NEAR(out(i, i).real(), (rho * b.effect(y)).trace().real(), 1e-13);
    }
    EXPECT_LT(frobenius_distance(out, Mat(out.diagonal().asDiagonal())), 1e-13);
  }
}

TEST(ClassicalChannelTest, JointBranchesReproduceFirstMarginal) {
  const ProductLabeledPovm m(observable_C(0.8), {1, 1});
  const KrausChannel c = classical_channel(m);
  const Povm a = qubit_binary(0.8, xz_axis(0.0));
  for (std::size_t x = 0; x < a.size(); ++x) {
    EXPECT_LT(frobenius_distance(heisenberg_branch(c, a.label(x), identity(c.dim_out())),
                                 a.effect(x)),
              1e-13);
  }
}

TEST(StinespringTest, IdentityAndLuders) {
  const StinespringForm s = stinespring(identity_channel(2));
  EXPECT_EQ(s.dim_env, 1u);
  EXPECT_LT(frobenius_distance(s.v, identity(2)), 1e-15);
  const KrausChannel lud = luders(qubit_binary(0.8, xz_axis(0.0)));
  const StinespringForm sl = stinespring(lud);
  EXPECT_EQ(sl.v.rows(), 4);
  EXPECT_LT(isometry_error(sl.v), 1e-10);
  for (const ComplexMatrix& rho : state_basis(2)) {
    EXPECT_LT(frobenius_distance(reduce_to_output(sl, rho), qseq::apply(lud, rho)), 1e-12);
  }
}

TEST(StinespringTest, RandomReductionsMatchOracles) {
  std::mt19937 rng(13);
  const auto kraus = testing::random_kraus(rng, 2, 3, 3);
  const KrausChannel c(2, 3, {kraus.begin(), kraus.end()});
  const StinespringForm s = stinespring(c);
  EXPECT_LT(isometry_error(s.v), 1e-10);
  const KrausChannel conj = conjugate(c);
  for (int trial = 0; trial < 5; ++trial) {
    const Mat rho = testing::random_state(rng, 2);
    const Mat big = s.v * rho * s.v.adjoint();
    EXPECT_LT(frobenius_distance(reduce_to_output(s, rho), testing::trace_second_loops(big, 3, 3)),
              1e-12);
    EXPECT_LT(frobenius_distance(reduce_to_environment(s, rho), environment_oracle(kraus, rho)),
              1e-12);
    EXPECT_LT(frobenius_distance(qseq::apply(conj, rho), environment_oracle(kraus, rho)), 1e-12);
  }
}

TEST(ConjugateTest, UnitaryHasTrivialEnvironment) {
  const KrausChannel u = unitary_channel(pauli_x());
  const KrausChannel conj = conjugate(u);
  EXPECT_EQ(conj.dim_out(), 1u);
  EXPECT_LT(std::abs(qseq::apply(conj, plus_state())(0, 0) - 1.0), 1e-15);
}

TEST(ConjugateTest, DephasingSendsPlusToMixed) {
  const KrausChannel conj = conjugate(luders(qubit_binary(1.0, xz_axis(0.0))));
  EXPECT_LT(frobenius_distance(qseq::apply(conj, plus_state()), identity(2) / 2.0), 1e-15);
}

TEST(ConjugateTest, PureInputSpectraAgree) {
  std::mt19937 rng(19);
  const auto kraus = testing::random_kraus(rng, 2, 2, 3);
  const KrausChannel c(2, 2, {kraus.begin(), kraus.end()});
  const Mat psi = testing::random_matrix(rng, 2, 1);
  const Mat rho = psi * psi.adjoint() / psi.squaredNorm();
  const Eigen::VectorXd out = sorted_spectrum(qseq::apply(c, rho), 2);
  const Eigen::VectorXd env = sorted_spectrum(qseq::apply(conjugate(c), rho), 2);
  EXPECT_LT((out - env).norm(), 1e-12);
  // Conjugating twice returns to a channel with the output spectrum.
  const Eigen::VectorXd twice =
      sorted_spectrum(qseq::apply(conjugate(conjugate(c)), rho), 2);
  EXPECT_LT((out - twice).norm(), 1e-12);
}

TEST(ConjugateTest, KrausMixingRotatesEnvironment) {
  // K'_i = sum_j u_ij K_j describes the same channel; its environment
  // output is u E u^dagger.
  std::mt19937 rng(21);
  const auto kraus = testing::random_kraus(rng, 2, 2, 3);
  const Eigen::HouseholderQR<Mat> qr(testing::random_matrix(rng, 3, 3));
  const Mat u = qr.householderQ();
  std::vector<ComplexMatrix> mixed(3, Mat::Zero(2, 2));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) mixed[i] += u(i, j) * kraus[j];
  const KrausChannel c(2, 2, {kraus.begin(), kraus.end()});
  const KrausChannel c2(2, 2, mixed);
  const Mat rho = testing::random_state(rng, 2);
  EXPECT_LT(frobenius_distance(qseq::apply(c, rho), qseq::apply(c2, rho)), 1e-12);
  const Mat e = qseq::apply(conjugate(c), rho);
  const Mat e2 = qseq::apply(conjugate(c2), rho);
  EXPECT_LT(frobenius_distance(e2, u * e * u.adjoint()), 1e-12);
}

TEST(NondisturbingTest, Examples) {
  const Povm a = qubit_binary(0.8, xz_axis(0.0));
  const KrausChannel lud = luders(a);
  EXPECT_TRUE(nondisturbing(identity_channel(2), qubit_binary(0.3, xz_axis(1.0))));
  EXPECT_TRUE(nondisturbing(lud, qubit_binary(0.6, xz_axis(0.0))));
  EXPECT_FALSE(nondisturbing(lud, qubit_binary(0.6, xz_axis(kHalfPi))));
  EXPECT_THROW(nondisturbing(lud, trivial_povm(3)), DimensionError);
}

TEST(ComposeTest, SequentialApplication) {
  std::mt19937 rng(4);
  const auto k1 = testing::random_kraus(rng, 2, 3, 2);
  const auto k2 = testing::random_kraus(rng, 3, 2, 2);
  const KrausChannel first(2, 3, {k1.begin(), k1.end()});
  const KrausChannel second(3, 2, {k2.begin(), k2.end()});
  const Mat rho = testing::random_state(rng, 2);
  EXPECT_LT(frobenius_distance(qseq::apply(compose(second, first), rho),
                               testing::kraus_sum(k2, testing::kraus_sum(k1, rho))),
            1e-12);
}

TEST(StateBasisTest, SpansOperatorSpace) {
  const auto states = state_basis(3);
  ASSERT_EQ(states.size(), 9u);
  Mat columns(9, 9);
  for (int k = 0; k < 9; ++k) {
    EXPECT_NEAR(states[k].trace().real(), 1.0, 1e-14);
    EXPECT_TRUE(is_psd(states[k]));
    columns.col(k) = Eigen::Map<const Eigen::VectorXcd>(states[k].data(), 9);
  }
  EXPECT_EQ(numerical_rank(columns), 9u);
}

}  // namespace
}  // namespace qseq
