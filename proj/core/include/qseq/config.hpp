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

#ifndef QSEQ_CONFIG_HPP_
#define QSEQ_CONFIG_HPP_

#include <cstddef>

namespace qseq {

// Every tolerance used by the library defaults to a value from this record.
// Callers always pass tolerances explicitly; the defaults exist so that the
// CLI, the tests and the library agree on one set of numbers.
struct Defaults {
  // Hermiticity and positivity checks on operators.
  static constexpr double kPsdTol = 1e-9;
  // Eigenvalues at or below this are treated as zero when counting rank.
  static constexpr double kRankTol = 1e-9;
  // Trace and positivity checks on density matrices handed to apply().
  static constexpr double kStateTol = 1e-8;
  // Singular values below cutoff * sigma_max are dropped in pseudo-inverses.
  static constexpr double kPinvCutoff = 1e-10;
  // Equality of operators (marginals, Heisenberg images, intertwiners).
  static constexpr double kEqualityTol = 1e-8;
  // Slack on the closed-form qubit joint measurability inequality.
  static constexpr double kBuschSlack = 1e-12;

  // Alternating-projection solver.
  static constexpr double kFeasTol = 1e-8;
  static constexpr std::size_t kMaxIters = 50000;
  static constexpr std::size_t kStagnationWindow = 500;
  static constexpr double kStagnationDelta = 1e-12;
  static constexpr double kFloorFactor = 10.0;

  // Desk-scale guard for searches over three or more observables.
  static constexpr std::size_t kMaxJointObservables = 3;
  static constexpr std::size_t kMaxMultiJointDim = 4;
};

}  // namespace qseq

#endif  // QSEQ_CONFIG_HPP_
