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

#include "qseq/conic.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qseq/errors.hpp"

namespace qseq {

std::string_view to_string(FeasibilityStatus status) {
  switch (status) {
    case FeasibilityStatus::kFeasible:
      return "feasible";
    case FeasibilityStatus::kInfeasible:
      return "infeasible";
    case FeasibilityStatus::kUndecided:
      return "undecided";
  }
  return "undecided";
}

PsdFeasibilityProblem::PsdFeasibilityProblem(std::size_t blocks, std::size_t block_dim)
    : blocks_(blocks), block_dim_(block_dim) {
  if (blocks == 0 || block_dim == 0) {
    throw DimensionError("PsdFeasibilityProblem: empty variable space");
  }
}

void PsdFeasibilityProblem::add_constraint(const std::vector<Term>& terms,
                                           const ComplexMatrix& rhs) {
  const auto n = static_cast<Eigen::Index>(block_dim_);
  const Eigen::Index block_size = n * n;
  const Eigen::Index width = block_size * static_cast<Eigen::Index>(blocks_);
  const Eigen::Index eqs = rhs.size();
  std::vector<Eigen::VectorXcd> rows(static_cast<std::size_t>(eqs),
                                     Eigen::VectorXcd::Zero(width));
  for (const Term& term : terms) {
    if (term.block >= blocks_) {
      throw DimensionError("PsdFeasibilityProblem: block index out of range");
    }
    const Eigen::Index offset = static_cast<Eigen::Index>(term.block) * block_size;
    for (Eigen::Index col = 0; col < n; ++col) {
      for (Eigen::Index row = 0; row < n; ++row) {
        ComplexMatrix unit = ComplexMatrix::Zero(n, n);
        unit(row, col) = 1.0;
        const ComplexMatrix image = term.map ? term.map(unit) : unit;
        if (image.rows() != rhs.rows() || image.cols() != rhs.cols()) {
          std::ostringstream msg;
          msg << "PsdFeasibilityProblem: map output is " << image.rows() << "x"
              << image.cols() << ", constraint is " << rhs.rows() << "x" << rhs.cols();
          throw DimensionError(msg.str());
        }
        // Column-major flattening for both the variable and the image.
        for (Eigen::Index e = 0; e < eqs; ++e) {
          rows[static_cast<std::size_t>(e)](offset + col * n + row) += image(e);
        }
      }
    }
  }
  for (Eigen::Index e = 0; e < eqs; ++e) {
    rows_.push_back(std::move(rows[static_cast<std::size_t>(e)]));
    rhs_.push_back(rhs(e));
  }
}

namespace {

Eigen::VectorXcd flatten(std::span<const ComplexMatrix> blocks, std::size_t n) {
  const auto block_size = static_cast<Eigen::Index>(n * n);
  Eigen::VectorXcd out(block_size * static_cast<Eigen::Index>(blocks.size()));
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k].rows() != static_cast<Eigen::Index>(n) ||
        blocks[k].cols() != static_cast<Eigen::Index>(n)) {
      throw DimensionError("PsdFeasibilityProblem: block has the wrong shape");
    }
    out.segment(static_cast<Eigen::Index>(k) * block_size, block_size) =
        Eigen::Map<const Eigen::VectorXcd>(blocks[k].data(), block_size);
  }
  return out;
}

std::vector<ComplexMatrix> unflatten(const Eigen::VectorXcd& x, std::size_t blocks,
                                     std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n);
  std::vector<ComplexMatrix> out;
  out.reserve(blocks);
  for (std::size_t k = 0; k < blocks; ++k) {
    out.emplace_back(
        Eigen::Map<const ComplexMatrix>(x.data() + static_cast<Eigen::Index>(k) * nn * nn,
                                        nn, nn));
  }
  return out;
}

}  // namespace

double PsdFeasibilityProblem::residual(std::span<const ComplexMatrix> x) const {
  if (x.size() != blocks_) {
    throw DimensionError("PsdFeasibilityProblem::residual: wrong number of blocks");
  }
  const Eigen::VectorXcd flat = flatten(x, block_dim_);
  double sq = 0.0;
  for (std::size_t e = 0; e < rows_.size(); ++e) {
    sq += std::norm(rows_[e].cwiseProduct(flat).sum() - rhs_[e]);
  }
  return std::sqrt(sq);
}

FeasibilityOutcome PsdFeasibilityProblem::solve(std::span<const ComplexMatrix> start,
                                                const SolverOptions& opts) const {
  if (start.size() != blocks_) {
    throw DimensionError("PsdFeasibilityProblem::solve: wrong number of start blocks");
  }
  const auto n = static_cast<Eigen::Index>(block_dim_);
  const Eigen::Index block_size = n * n;
  const Eigen::Index width = block_size * static_cast<Eigen::Index>(blocks_);
  const auto eqs = static_cast<Eigen::Index>(rows_.size());

  ComplexMatrix op(eqs, width);
  Eigen::VectorXcd b(eqs);
  for (Eigen::Index e = 0; e < eqs; ++e) {
    op.row(e) = rows_[static_cast<std::size_t>(e)].transpose();
    b(e) = rhs_[static_cast<std::size_t>(e)];
  }
  const ComplexMatrix op_pinv = pseudo_inverse(op, Defaults::kPinvCutoff);

  Eigen::VectorXcd x = flatten(start, block_dim_);
  Eigen::VectorXcd correction = Eigen::VectorXcd::Zero(width);
  Eigen::VectorXcd shifted(width);
  Eigen::VectorXcd best_point = x;
  Eigen::VectorXcd violation(eqs);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(n);
  ComplexMatrix block(n, n);
  ComplexMatrix projected(n, n);

  FeasibilityOutcome out;
  double best = std::numeric_limits<double>::infinity();
  std::size_t stalled = 0;
  for (std::size_t it = 1; it <= opts.max_iters; ++it) {
    // Affine step. Dykstra's correction for an affine set is orthogonal to
    // the set and drops out, so only the cone step carries one.
    violation.noalias() = op * x - b;
    shifted.noalias() = x - op_pinv * violation;
    shifted += correction;
    for (std::size_t k = 0; k < blocks_; ++k) {
      const Eigen::Index offset = static_cast<Eigen::Index>(k) * block_size;
      block = Eigen::Map<const ComplexMatrix>(shifted.data() + offset, n, n);
      block = (0.5 * (block + block.adjoint())).eval();
      eig.compute(block);
      projected.noalias() = eig.eigenvectors() *
                            eig.eigenvalues().cwiseMax(0.0).asDiagonal() *
                            eig.eigenvectors().adjoint();
      Eigen::Map<ComplexMatrix>(x.data() + offset, n, n) = projected;
    }
    correction = shifted - x;

    violation.noalias() = op * x - b;
    const double r = violation.norm();
    if (r < best - opts.stagnation_delta) {
      stalled = 0;
    } else {
      ++stalled;
    }
    if (r < best) {
      best = r;
      best_point = x;
    }
    if (opts.record_history) out.history.push_back(best);
    out.iterations = it;
    out.residual = best;
    if (best <= opts.tol) {
      out.status = FeasibilityStatus::kFeasible;
      out.witness = unflatten(best_point, blocks_, block_dim_);
      return out;
    }
    if (stalled >= opts.stagnation_window && best > opts.floor_factor * opts.tol) {
      out.status = FeasibilityStatus::kInfeasible;
      out.infeasibility_floor = best;
      return out;
    }
  }
  out.status = FeasibilityStatus::kUndecided;
  return out;
}

}  // namespace qseq
