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

#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qseq/errors.hpp"
#include "qseq/feasibility.hpp"
#include "qseq/universal.hpp"

namespace qseq {
namespace {

using testing::Mat;

constexpr double kHalfPi = std::numbers::pi / 2.0;

const Povm& a08() {
  static const Povm p = qubit_binary(0.8, xz_axis(0.0));
  return p;
}

// M(x, c) = delta(x, c_1) C(c).
ProductLabeledPovm refinement(const Povm& c) {
  return make_joint(a08().labels(), c.labels(), [&](std::size_t x, std::size_t y) {
    return c.label(y).front() == a08().label(x).front() ? ComplexMatrix(c.effect(y))
                                                       : ComplexMatrix(Mat::Zero(2, 2));
  });
}

// max_y || sum_i K_i^dagger B'(y) K_i - B(y) ||, from the Kraus list.
double pulled_back_gap(const KrausChannel& c, const Povm& b_prime, const Povm& b) {
  double worst = 0.0;
  for (std::size_t y = 0; y < b.size(); ++y) {
    Mat acc = Mat::Zero(2, 2);
    for (const ComplexMatrix& k : c.kraus()) acc += k.adjoint() * b_prime.effect(y) * k;
    worst = std::max(worst, (acc - b.effect(y)).norm());
  }
  return worst;
}

TEST(UniversalChannelTest, IsAnAChannelWithRankSumOutput) {
  const KrausChannel lambda = universal_channel(a08());
  EXPECT_EQ(lambda.dim_out(), 4u);
  EXPECT_EQ(lambda.kraus().size(), 2u);
  EXPECT_TRUE(is_cptp(lambda, 1e-12));
  for (std::size_t x = 0; x < a08().size(); ++x) {
    EXPECT_LT(frobenius_distance(heisenberg_branch(lambda, a08().label(x), identity(4)),
                                 a08().effect(x)),
              1e-12);
  }
}

TEST(UniversalChannelTest, SharpObservableReducesToLuders) {
  const Povm z = qubit_binary(1.0, xz_axis(0.0));
  const KrausChannel lambda = universal_channel(z);
  const KrausChannel identified = pull_back_output(lambda, naimark_minimal(z).v);
  EXPECT_LT(frobenius_distance(choi(identified).matrix, choi(luders(z)).matrix), 1e-10);
}

TEST(ModifiedObservableTest, RefinementOfC) {
  const Povm c = observable_C(0.8);
  const KrausChannel lambda = universal_channel(a08());
  const Povm b_prime = modified_observable(a08(), refinement(c));
  EXPECT_TRUE(validate(b_prime, 1e-10));
  EXPECT_EQ(b_prime.dim(), 4u);
  EXPECT_LT(pulled_back_gap(lambda, b_prime, c), 1e-8);
  EXPECT_TRUE(verify_sequential(lambda, b_prime, c));
}

TEST(ModifiedObservableTest, OrthogonalBinary) {
  const Povm b = qubit_binary(0.6, xz_axis(kHalfPi));
  const KrausChannel lambda = universal_channel(a08());
  const Povm b_prime = modified_observable(a08(), orthogonal_joint_observable(0.8, 0.6));
  EXPECT_LT(pulled_back_gap(lambda, b_prime, b), 1e-8);
  EXPECT_LT(sequential_residual(lambda, b_prime, b), 1e-8);
}

TEST(ModifiedObservableTest, TrivialSecondObservable) {
  const ProductLabeledPovm m =
      make_joint(a08().labels(), std::vector<Label>{{0}},
                 [&](std::size_t x, std::size_t) { return ComplexMatrix(a08().effect(x)); });
  const Povm b_prime = modified_observable(a08(), m);
  ASSERT_EQ(b_prime.size(), 1u);
  EXPECT_LT(frobenius_distance(b_prime.effect(0), identity(4)), 1e-15);
}

TEST(ModifiedObservableTest, RejectsJointOfAnotherObservable) {
  EXPECT_THROW(modified_observable(qubit_binary(0.5, xz_axis(0.0)),
                                   orthogonal_joint_observable(0.8, 0.6)),
               InvalidArgument);
}

TEST(ProofIdentitiesTest, FactorizationAndAuxiliaryFormula) {
  const std::vector<ProductLabeledPovm> joints{refinement(observable_C(0.8)),
                                               orthogonal_joint_observable(0.8, 0.6)};
  for (const ProductLabeledPovm& m : joints) {
    EXPECT_LT(factorization_residual(a08(), m), 1e-9);
    const CompensationData data = compensation_data(a08(), m);
    EXPECT_LT(auxiliary_formula_residual(data, m), 1e-9);
    EXPECT_LT(intertwining_error(data.j, data.minimal, data.coarse), 1e-9);
  }
}

TEST(GammaChannelTest, OutputsDistributionOfB) {
  const ProductLabeledPovm m = orthogonal_joint_observable(0.8, 0.6);
  const KrausChannel gamma = gamma_channel(a08(), m);
  const KrausChannel lambda = universal_channel(a08());
  const Povm b = qubit_binary(0.6, xz_axis(kHalfPi));
  for (const ComplexMatrix& rho : state_basis(2)) {
    const ComplexMatrix out = qseq::apply(gamma, qseq::apply(lambda, rho));
    for (std::size_t y = 0; y < b.size(); ++y) {
      const auto i = static_cast<Eigen::Index>(y);
      EXPECT_NEAR(out(i, i).real(), (rho * b.effect(y)).trace().real(), 1e-12);
    }
  }
}

TEST(SequentialTest, LudersImplementsOrthogonalBinaryWithSharpFollowUp) {
  const KrausChannel lud = luders(a08());
  const Povm b = qubit_binary(0.6, xz_axis(kHalfPi));
  const Povm b1 = qubit_binary(1.0, xz_axis(kHalfPi));
  EXPECT_TRUE(verify_sequential(lud, b1, b, 1e-12));
  EXPECT_FALSE(verify_sequential(lud, b, b, 1e-6));
  EXPECT_THROW(sequential_residual(lud, trivial_povm(2), b), InvalidArgument);
}

TEST(SchemeTest, ImplementedJointHasBothMarginals) {
  const KrausChannel lud = luders(a08());
  const Povm b = qubit_binary(0.6, xz_axis(kHalfPi));
  const SequentialScheme scheme = make_scheme(a08(), lud, qubit_binary(1.0, xz_axis(kHalfPi)));
  const auto [first, second] = marginals(scheme.implemented);
  EXPECT_LT(max_effect_distance(first, a08()), 1e-12);
  EXPECT_LT(max_effect_distance(second, b), 1e-12);
  EXPECT_THROW(implemented_joint(identity_channel(2), b), InvalidArgument);
  EXPECT_THROW(make_scheme(a08(), luders(qubit_binary(0.5, xz_axis(0.0))), b), InvalidArgument);
}

TEST(PullBackTest, ConjugatesKrausByIsometry) {
  std::mt19937 rng(3);
  const auto kraus = testing::random_kraus(rng, 2, 2, 2);
  const KrausChannel c(2, 2, {kraus.begin(), kraus.end()});
  const Eigen::HouseholderQR<Mat> qr(testing::random_matrix(rng, 2, 2));
  const Mat u = qr.householderQ();
  const KrausChannel pulled = pull_back_output(c, u);
  for (std::size_t i = 0; i < kraus.size(); ++i) {
    EXPECT_LT((pulled.kraus()[i] - u.adjoint() * kraus[i]).norm(), 1e-14);
  }
}

}  // namespace
}  // namespace qseq
