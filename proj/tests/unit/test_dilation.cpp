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
#include "qseq/dilation.hpp"
#include "qseq/errors.hpp"

namespace qseq {
namespace {

using testing::Mat;

// max_x ||v^dagger sharp(x) v - A(x)||_F, computed directly.
double dilation_gap(const Povm& a, const NaimarkDilation& d) {
  double worst = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    const Mat back = d.v.adjoint() * d.sharp.effect(a.label(x)) * d.v;
    worst = std::max(worst, (back - a.effect(x)).norm());
  }
  return worst;
}

const Povm& sharp_z() {
  static const Povm p = qubit_binary(1.0, xz_axis(0.0));
  return p;
}
const Povm& a08() {
  static const Povm p = qubit_binary(0.8, xz_axis(0.0));
  return p;
}

TEST(CanonicalTest, Dimensions) {
  const NaimarkDilation z = naimark_canonical(sharp_z());
  EXPECT_EQ(z.dim_k, 4u);
  EXPECT_TRUE(verify_dilation(sharp_z(), z, 1e-12));
  const NaimarkDilation a = naimark_canonical(a08());
  EXPECT_EQ(a.dim_k, 4u);
  EXPECT_LT(dilation_gap(a08(), a), 1e-14);
  EXPECT_LT(isometry_error(a.v), 1e-14);
  EXPECT_TRUE(is_sharp(a.sharp));
}

TEST(CanonicalTest, TrivialIsUnitaryEmbedding) {
  const NaimarkDilation t = naimark_canonical(trivial_povm(3));
  EXPECT_EQ(t.dim_k, 3u);
  EXPECT_LT(frobenius_distance(t.v * t.v.adjoint(), identity(3)), 1e-14);
}

TEST(CanonicalTest, RejectsInvalidPovm) {
  EXPECT_THROW(naimark_canonical(Povm({{{0}, identity(2)}, {{1}, identity(2)}})),
               InvalidArgument);
}

TEST(MinimalTest, DimensionIsRankSum) {
  const Povm c = observable_C(0.8);
  const std::vector<std::pair<const Povm*, std::size_t>> cases{
      {&a08(), 4}, {&c, 5}, {&sharp_z(), 2}};
  for (const auto& [p, expected] : cases) {
    std::size_t ranks = 0;
    for (const ComplexMatrix& e : p->effects()) ranks += numerical_rank(e, 1e-9);
    const NaimarkDilation d = naimark_minimal(*p);
    EXPECT_EQ(d.dim_k, expected);
    EXPECT_EQ(d.dim_k, ranks);
    EXPECT_TRUE(verify_dilation(*p, d, 1e-9));
    EXPECT_TRUE(is_minimal(d, 1e-9));
    EXPECT_LT(dilation_gap(*p, d), 1e-12);
    EXPECT_EQ(numerical_rank(spanning_set(d), 1e-9), d.dim_k);
  }
}

TEST(MinimalTest, SharpZIsUnitaryAndCanonicalIsNotMinimal) {
  const NaimarkDilation d = naimark_minimal(sharp_z());
  EXPECT_LT(frobenius_distance(d.v * d.v.adjoint(), identity(2)), 1e-14);
  EXPECT_FALSE(is_minimal(naimark_canonical(sharp_z())));
}

TEST(VerifyDilationTest, DetectsWrongObservable) {
  const NaimarkDilation d = naimark_minimal(a08());
  EXPECT_FALSE(verify_dilation(qubit_binary(0.7, xz_axis(0.0)), d, 1e-9));
  NaimarkDilation broken = d;
  broken.v *= 1.01;
  EXPECT_FALSE(verify_dilation(a08(), broken, 1e-9));
}

TEST(ConnectingIsometryTest, MinimalIntoCanonical) {
  const NaimarkDilation minimal = naimark_minimal(a08());
  const NaimarkDilation canonical = naimark_canonical(a08());
  const ConnectingIsometry j = connecting_isometry(minimal, canonical);
  EXPECT_EQ(j.j.rows(), 4);
  EXPECT_EQ(j.j.cols(), 4);
  EXPECT_LT(intertwining_error(j, minimal, canonical), 1e-9);
  // Oracle checks of each identity.
  EXPECT_LT(isometry_error(j.j), 1e-9);
  EXPECT_LT((j.j * minimal.v - canonical.v).norm(), 1e-9);
  for (const Label& x : a08().labels()) {
    EXPECT_LT((j.j * minimal.sharp.effect(x) - canonical.sharp.effect(x) * j.j).norm(), 1e-9);
  }
}

TEST(ConnectingIsometryTest, CIntoCanonicalIsEightByFive) {
  const Povm c = observable_C(0.8);
  const NaimarkDilation minimal = naimark_minimal(c);
  const NaimarkDilation canonical = naimark_canonical(c);
  const ConnectingIsometry j = connecting_isometry(minimal, canonical);
  EXPECT_EQ(j.j.rows(), 8);
  EXPECT_EQ(j.j.cols(), 5);
  EXPECT_LT(intertwining_error(j, minimal, canonical), 1e-9);
}

TEST(ConnectingIsometryTest, Errors) {
  EXPECT_THROW(connecting_isometry(naimark_canonical(sharp_z()), naimark_minimal(sharp_z())),
               NotMinimalError);
  EXPECT_THROW(connecting_isometry(naimark_minimal(a08()),
                                   naimark_canonical(qubit_binary(0.7, xz_axis(0.0)))),
               InvalidArgument);
}

TEST(CoarseGrainTest, JointDilationCoarseGrainsToMarginals) {
  const ProductLabeledPovm m(observable_C(0.8), {1, 1});
  const NaimarkDilation joint = naimark_canonical(m.povm());
  const NaimarkDilation first = coarse_grain(joint, m.arities(), 0);
  const NaimarkDilation second = coarse_grain(joint, m.arities(), 1);
  EXPECT_TRUE(verify_dilation(m.marginal(0), first, 1e-12));
  EXPECT_TRUE(verify_dilation(m.marginal(1), second, 1e-12));
  EXPECT_EQ(first.dim_k, joint.dim_k);
  EXPECT_LT(dilation_gap(a08(), first), 1e-12);
}

}  // namespace
}  // namespace qseq
