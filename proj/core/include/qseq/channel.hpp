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

#ifndef QSEQ_CHANNEL_HPP_
#define QSEQ_CHANNEL_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qseq/config.hpp"
#include "qseq/linalg.hpp"
#include "qseq/povm.hpp"

namespace qseq {

/// One outcome of a measurement channel and the Kraus operators that make up
/// its completely positive branch.
struct Branch {
  Label label;
  std::vector<std::size_t> kraus_indices;
};

/// A linear map rho -> sum_i K_i rho K_i^dagger with K_i : C^dim_in -> C^dim_out.
///
/// The optional partition splits the Kraus list into per-outcome branches
/// Phi_x whose sum is the channel. Construction checks shapes and that the
/// partition is disjoint and exhaustive. Trace preservation is a separate
/// check (is_cptp), so a malformed candidate can still be inspected.
class KrausChannel {
 public:
  KrausChannel(std::size_t dim_in, std::size_t dim_out,
               std::vector<ComplexMatrix> kraus,
               std::optional<std::vector<Branch>> partition = std::nullopt);

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  bool has_partition() const { return partition_.has_value(); }
  /// Branches sorted by label. Throws InvalidArgument without a partition.
  const std::vector<Branch>& partition() const;
  const Branch& branch(const Label& label) const;

 private:
  std::size_t dim_in_;
  std::size_t dim_out_;
  std::vector<ComplexMatrix> kraus_;
  std::optional<std::vector<Branch>> partition_;
};

struct ChoiMatrix {
  ComplexMatrix matrix;  // (dim_out*dim_in)-square, output factor first
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;
};

/// Isometry V : C^dim_in -> C^dim_out (x) C^dim_env with the environment as
/// the second (fast) factor.
struct StinespringForm {
  ComplexMatrix v;
  std::size_t dim_out = 0;
  std::size_t dim_env = 0;
};

KrausChannel identity_channel(std::size_t dim);
KrausChannel unitary_channel(const ComplexMatrix& u);

/// ||sum_i K_i^dagger K_i - I||_F.
double trace_preservation_error(const KrausChannel& c);
bool is_cptp(const KrausChannel& c, double tol = Defaults::kPsdTol);

/// Checks that rho is a dim-square density matrix within tol; throws
/// DimensionError / InvalidArgument otherwise.
void require_state(const ComplexMatrix& rho, std::size_t dim,
                   double tol = Defaults::kStateTol);

/// Schroedinger picture on a validated state.
ComplexMatrix apply(const KrausChannel& c, const ComplexMatrix& state,
                    double tol = Defaults::kStateTol);
/// Linear extension to arbitrary dim_in-square operators (no state checks).
ComplexMatrix apply_map(const KrausChannel& c, const ComplexMatrix& x);
/// Heisenberg picture, sum_i K_i^dagger T K_i.
ComplexMatrix heisenberg_apply(const KrausChannel& c, const ComplexMatrix& t);

/// Branch Phi_x applied to an operator (no state checks).
ComplexMatrix apply_branch(const KrausChannel& c, const Label& label,
                           const ComplexMatrix& x);
ComplexMatrix heisenberg_branch(const KrausChannel& c, const Label& label,
                                const ComplexMatrix& t);

/// second o first.
KrausChannel compose(const KrausChannel& second, const KrausChannel& first);

/// (Lambda (x) id) applied to sum_ij |ii><jj|.
ChoiMatrix choi(const KrausChannel& c);
ChoiMatrix choi_of_branch(const KrausChannel& c, const Label& label);
/// PSD and Tr_out == I within tol.
bool validate_choi(const ChoiMatrix& j, double tol = Defaults::kPsdTol);

/// Kraus {sqrt(A(x))}, branch x -> {x}. Throws InvalidArgument for an invalid
/// POVM.
KrausChannel luders(const Povm& a, double tol = Defaults::kPsdTol);

/// rho -> sum_y tr[rho B(y)] |y><y| on C^{|Omega_B|}, |y> indexed in label
/// order. Kraus sqrt(lambda)|y><v| over eigenpairs of B(y) with
/// lambda > rank_tol; branch y holds the operators built from B(y).
KrausChannel classical_channel(const Povm& b, double tol = Defaults::kPsdTol,
                               double rank_tol = Defaults::kRankTol);
/// The same output map built from a joint observable M of (A, B): Kraus
/// operators come from the eigenpairs of each M(x, y), sent to |y>, and the
/// branches are indexed by the first factor x.
KrausChannel classical_channel(const ProductLabeledPovm& joint,
                               double tol = Defaults::kPsdTol,
                               double rank_tol = Defaults::kRankTol);

/// V psi = sum_i (K_i psi) (x) |i>, dim_env = number of Kraus operators.
StinespringForm stinespring(const KrausChannel& c);
/// Tr_env[V rho V^dagger].
ComplexMatrix reduce_to_output(const StinespringForm& s, const ComplexMatrix& x);
/// Tr_out[V rho V^dagger].
ComplexMatrix reduce_to_environment(const StinespringForm& s,
                                    const ComplexMatrix& x);

/// Complementary channel C^dim_in -> C^dim_env of the canonical Stinespring
/// form: L_a has row i equal to row a of K_i.
KrausChannel conjugate(const KrausChannel& c);

/// True iff heisenberg_apply(c, B(y)) == B(y) for every y within tol.
bool nondisturbing(const KrausChannel& c, const Povm& b,
                   double tol = Defaults::kEqualityTol);

/// d^2 density matrices spanning all operators on C^d: |i><i| and the
/// (|i> + |j>)/sqrt2, (|i> + i|j>)/sqrt2 projectors for i < j.
std::vector<ComplexMatrix> state_basis(std::size_t d);

}  // namespace qseq

#endif  // QSEQ_CHANNEL_HPP_
