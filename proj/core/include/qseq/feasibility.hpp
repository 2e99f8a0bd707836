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

#ifndef QSEQ_FEASIBILITY_HPP_
#define QSEQ_FEASIBILITY_HPP_

#include <optional>
#include <span>
#include <vector>

#include "qseq/channel.hpp"
#include "qseq/conic.hpp"
#include "qseq/config.hpp"
#include "qseq/povm.hpp"

namespace qseq {

/// Find PSD parts J_k of `total` (an operator on C^dim_out (x) C^dim_in, output
/// factor first) with sum_k J_k = total and Tr_out J_k = targets[k].effect^T.
///
/// Targets are given as effects; the transpose that the Choi convention
/// (Lambda (x) id)(sum_ij |ii><jj|) puts on input marginals is applied inside
/// decompose_psd and nowhere else.
struct DecompositionProblem {
  struct Target {
    Label label;
    ComplexMatrix effect;
  };
  ComplexMatrix total;
  std::vector<Target> targets;
  std::size_t dim_out = 0;
  std::size_t dim_in = 0;
};

/// Throws InvalidArgument when total is not PSD and NecessaryConditionError
/// when sum_k targets[k]^T differs from Tr_out(total). Starts from the equal
/// split total / k.
FeasibilityOutcome decompose_psd(const DecompositionProblem& problem,
                                 const SolverOptions& opts = {});

/// Is c an A-channel? A partition whose branches already reproduce A
/// short-circuits to Feasible with the branch Choi matrices as witness;
/// otherwise decompose_psd runs on choi(c).
FeasibilityOutcome is_a_channel(const KrausChannel& c, const Povm& a,
                                const SolverOptions& opts = {});

/// is_a_channel(conjugate(c), b). A trivial b is Feasible immediately.
FeasibilityOutcome conjugate_is_b_channel(const KrausChannel& c, const Povm& b,
                                          const SolverOptions& opts = {});

/// Observable B' on the output of c with c^*(B'(y)) = B(y).
///
/// Requires conjugate_is_b_channel to be Feasible, then solves for B' directly
/// (PSD blocks, sum_y B'(y) = I, c^*(B'(y)) = B(y)) and checks the result with
/// verify_sequential. Throws ConvergenceError when either step fails.
Povm recover_b_prime(const KrausChannel& c, const Povm& b, const SolverOptions& opts = {});

struct JointSearch {
  FeasibilityOutcome outcome;
  std::optional<ProductLabeledPovm> joint;
};

/// Search for an observable on the product outcome set whose single-factor
/// marginals are the given observables. Labels of the witness concatenate
/// the factor labels. Two identical observables short-circuit to the
/// diagonal joint M(x, x') = delta_{x x'} A(x). Three observables are allowed
/// up to dimension 4; more are rejected with InvalidArgument.
JointSearch find_joint_observable(std::span<const Povm> observables,
                                  const SolverOptions& opts = {});
JointSearch find_joint_observable(const Povm& a, const Povm& b,
                                  const SolverOptions& opts = {});

/// 1 - (s^2 + t^2 - cos^2(theta) s^2 t^2). Requires s, t in (0, 1] and
/// theta in [0, pi/2]; throws InvalidArgument otherwise.
double busch_margin(double s, double t, double theta);
/// busch_margin >= -slack. The slack absorbs representation error in the
/// inputs: 0.8^2 + 0.6^2 evaluates to 1 + 2^-52 in binary64.
bool busch_criterion(double s, double t, double theta,
                     double slack = Defaults::kBuschSlack);

/// M(i, j) = (I + i s sigma_z + j t sigma_x) / 4 for i, j = +-1. Requires
/// s^2 + t^2 <= 1 (up to kBuschSlack).
ProductLabeledPovm orthogonal_joint_observable(double s, double t);

}  // namespace qseq

#endif  // QSEQ_FEASIBILITY_HPP_
