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

#ifndef QSEQ_DILATION_HPP_
#define QSEQ_DILATION_HPP_

#include <cstddef>
#include <span>

#include "qseq/config.hpp"
#include "qseq/linalg.hpp"
#include "qseq/povm.hpp"

namespace qseq {

/// Naimark dilation (K, sharp, v) of a POVM A on C^d: v : C^d -> K = C^dim_k
/// is an isometry and v^dagger sharp(x) v = A(x) for every outcome x.
struct NaimarkDilation {
  std::size_t dim_k = 0;
  Povm sharp;
  ComplexMatrix v;
};

/// Isometry j : K_1 -> K_2 intertwining two dilations of the same POVM:
/// j sharp_1(x) = sharp_2(x) j and j v_1 = v_2.
struct ConnectingIsometry {
  ComplexMatrix j;
};

/// K = C^{|Omega|} (x) C^d, v psi = sum_x |x> (x) sqrt(A(x)) psi,
/// sharp(x) = |x><x| (x) I. Outcome x is indexed by its position in label
/// order.
NaimarkDilation naimark_canonical(const Povm& a, double tol = Defaults::kPsdTol);

/// The dilation restricted to the direct sum of the ranges of the effects.
///
/// Block x of K is spanned by range_isometry(A(x)) (columns R_x), so
/// dim_k = sum_x rank A(x). The isometry is v = [R_x^dagger sqrt(A(x))]_x
/// stacked in label order and sharp(x) is the projector onto block x. Effects
/// whose eigenvalues are all below rank_tol contribute an empty block.
NaimarkDilation naimark_minimal(const Povm& a, double rank_tol = Defaults::kRankTol,
                                double tol = Defaults::kPsdTol);

/// dim_k x (|Omega| * d) matrix whose columns are sharp(x) v e_i.
ComplexMatrix spanning_set(const NaimarkDilation& d);

/// True iff spanning_set(d) has numerical rank dim_k.
bool is_minimal(const NaimarkDilation& d, double rank_tol = Defaults::kRankTol);

/// All dilation invariants: v isometric, sharp valid and projective with the
/// labels of a, and v^dagger sharp(x) v == A(x), each within tol.
bool verify_dilation(const Povm& a, const NaimarkDilation& d,
                     double tol = Defaults::kPsdTol);

/// Solves j * spanning_set(minimal) = spanning_set(other) by pseudo-inverse.
///
/// Throws NotMinimalError if the first spanning set is rank deficient,
/// InvalidArgument if the label sets or input dimensions differ or the two
/// dilations compress to POVMs more than tol apart, and ConvergenceError if
/// the least-squares residual or the intertwining identities exceed tol.
ConnectingIsometry connecting_isometry(const NaimarkDilation& minimal,
                                       const NaimarkDilation& other,
                                       double tol = Defaults::kEqualityTol,
                                       double rank_tol = Defaults::kRankTol);

/// max of ||j^dagger j - I||, ||j s_1(x) - s_2(x) j||, ||j v_1 - v_2||.
double intertwining_error(const ConnectingIsometry& j, const NaimarkDilation& first,
                          const NaimarkDilation& second);

/// Coarse-grains a dilation of a joint observable to a dilation of one of its
/// marginals: sharp'(x) = sum of sharp(l) over labels l whose `factor` piece
/// is x. The arities describe how labels of d.sharp split into factors.
NaimarkDilation coarse_grain(const NaimarkDilation& d,
                             std::span<const std::size_t> arities,
                             std::size_t factor);

}  // namespace qseq

#endif  // QSEQ_DILATION_HPP_
