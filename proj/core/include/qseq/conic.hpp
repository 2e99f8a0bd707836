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

#ifndef QSEQ_CONIC_HPP_
#define QSEQ_CONIC_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qseq/config.hpp"
#include "qseq/linalg.hpp"

namespace qseq {

enum class FeasibilityStatus { kFeasible, kInfeasible, kUndecided };

std::string_view to_string(FeasibilityStatus status);

struct SolverOptions {
  double tol = Defaults::kFeasTol;
  std::size_t max_iters = Defaults::kMaxIters;
  // Infeasible is declared only after `stagnation_window` consecutive
  // iterations improving the best residual by less than `stagnation_delta`,
  // while that residual is above floor_factor * tol.
  std::size_t stagnation_window = Defaults::kStagnationWindow;
  double stagnation_delta = Defaults::kStagnationDelta;
  double floor_factor = Defaults::kFloorFactor;
  bool record_history = false;
};

/// Result of a feasibility search.
///
/// `residual` is the smallest constraint violation ||A(X) - b|| observed over
/// the PSD iterates, so it never increases between iterations. Infeasible is a
/// heuristic verdict (no dual certificate is computed); the floor is the
/// residual at which progress stalled.
struct FeasibilityOutcome {
  FeasibilityStatus status = FeasibilityStatus::kUndecided;
  std::optional<std::vector<ComplexMatrix>> witness;
  double residual = 0.0;
  std::size_t iterations = 0;
  std::optional<double> infeasibility_floor;
  std::vector<double> history;

  bool feasible() const { return status == FeasibilityStatus::kFeasible; }
};

/// Linear map applied to one variable block. An empty function is the
/// identity.
using LinearMap = std::function<ComplexMatrix(const ComplexMatrix&)>;

struct Term {
  std::size_t block;
  LinearMap map;
};

/// Find Hermitian PSD blocks X_0..X_{k-1} (all n x n) satisfying affine
/// constraints sum_terms map(X_block) = rhs.
///
/// solve() runs Dykstra's alternating projections between the product PSD
/// cone and the affine set cut out by all constraints together. The affine
/// projection uses a pseudo-inverse of the stacked constraint operator, so
/// redundant equations are harmless; inconsistent ones simply leave a
/// positive residual.
class PsdFeasibilityProblem {
 public:
  PsdFeasibilityProblem(std::size_t blocks, std::size_t block_dim);

  std::size_t blocks() const { return blocks_; }
  std::size_t block_dim() const { return block_dim_; }
  std::size_t equation_count() const { return rhs_.size(); }

  /// Throws DimensionError when a map output does not have rhs's shape or a
  /// block index is out of range.
  void add_constraint(const std::vector<Term>& terms, const ComplexMatrix& rhs);

  /// ||A(X) - b||_2 over all constraint entries.
  double residual(std::span<const ComplexMatrix> x) const;

  FeasibilityOutcome solve(std::span<const ComplexMatrix> start,
                           const SolverOptions& opts = {}) const;

 private:
  std::size_t blocks_;
  std::size_t block_dim_;
  std::vector<Eigen::VectorXcd> rows_;  // each row has blocks*n*n entries
  std::vector<Complex> rhs_;
};

}  // namespace qseq

#endif  // QSEQ_CONIC_HPP_
