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

#ifndef QSEQ_UNIVERSAL_HPP_
#define QSEQ_UNIVERSAL_HPP_

#include "qseq/channel.hpp"
#include "qseq/config.hpp"
#include "qseq/dilation.hpp"
#include "qseq/povm.hpp"

namespace qseq {

/// A two-step measurement: first the observable A realized by a partitioned
/// A-channel, then `second` (B') measured on the channel output. `implemented`
/// is the joint observable M(x, y) = Phi_x^*(B'(y)) the scheme realizes.
struct SequentialScheme {
  Povm first;
  KrausChannel channel;
  Povm second;
  ProductLabeledPovm implemented;
};

/// rho -> sum_x sharp(x) v rho v^dagger sharp(x) over naimark_minimal(a).
/// Kraus {sharp(x) v}, branch x -> {x}, dim_out = sum_x rank A(x).
KrausChannel universal_channel(const Povm& a, double rank_tol = Defaults::kRankTol,
                               double tol = Defaults::kPsdTol);

/// Intermediate objects of the compensating construction for one joint
/// observable M of (A, B): the minimal dilation of A, the canonical dilation
/// of M coarse-grained to A, and the isometry connecting them.
struct CompensationData {
  NaimarkDilation minimal;        // (K, A^, V)
  NaimarkDilation joint_dilation; // (K', M^, V')
  NaimarkDilation coarse;         // (K', A^', V')
  ConnectingIsometry j;
};

/// Builds CompensationData. Throws InvalidArgument when `joint` is not a
/// two-factor observable or its first marginal differs from a by more than
/// tol.
CompensationData compensation_data(const Povm& a, const ProductLabeledPovm& joint,
                                   double tol = Defaults::kEqualityTol,
                                   double rank_tol = Defaults::kRankTol);

/// B'(y) = sum_x J^dagger M^(x, y) J on the output space of
/// universal_channel(a). Labels are the second-factor labels of joint.
Povm modified_observable(const Povm& a, const ProductLabeledPovm& joint,
                         double tol = Defaults::kEqualityTol,
                         double rank_tol = Defaults::kRankTol);

/// Gamma^B(rho) = sum_{x,y} tr[rho J^dagger M^(x, y) J] |y><y|, i.e. the
/// classical channel of modified_observable(a, joint).
KrausChannel gamma_channel(const Povm& a, const ProductLabeledPovm& joint,
                           double tol = Defaults::kEqualityTol,
                           double rank_tol = Defaults::kRankTol);

/// max_y ||channel^*(b_prime(y)) - b(y)||_F. Throws DimensionError /
/// InvalidArgument when shapes or label sets disagree.
double sequential_residual(const KrausChannel& channel, const Povm& b_prime,
                           const Povm& b);
bool verify_sequential(const KrausChannel& channel, const Povm& b_prime,
                       const Povm& b, double tol = Defaults::kEqualityTol);

/// M(x, y) = sum_{i in branch x} K_i^dagger B'(y) K_i. Throws InvalidArgument
/// when the channel has no partition.
ProductLabeledPovm implemented_joint(const KrausChannel& channel, const Povm& b_prime);

/// Assembles a scheme and checks its invariants within tol: the channel is an
/// A-channel on a state basis and the first marginal of the implemented
/// observable equals A. Throws InvalidArgument otherwise.
SequentialScheme make_scheme(const Povm& first, const KrausChannel& channel,
                             const Povm& second, double tol = Defaults::kEqualityTol);

/// max over a basis of states of ||Lambda^B(rho) - Gamma^B(Lambda_A(rho))||_F,
/// where Lambda^B is the classical channel of the second marginal of joint.
double factorization_residual(const Povm& a, const ProductLabeledPovm& joint,
                              double tol = Defaults::kEqualityTol,
                              double rank_tol = Defaults::kRankTol);

/// max over x, y, x' of ||M^(x, y) J A^(x') - delta_{x x'} M^(x, y) J||_F.
double auxiliary_formula_residual(const CompensationData& data,
                                  const ProductLabeledPovm& joint);

/// Kraus operators pulled back through the dilation isometry, K -> v^dagger K.
/// For a sharp A the minimal dilation isometry is unitary and this identifies
/// the output of universal_channel(A) with the input space.
KrausChannel pull_back_output(const KrausChannel& channel, const ComplexMatrix& v);

}  // namespace qseq

#endif  // QSEQ_UNIVERSAL_HPP_
