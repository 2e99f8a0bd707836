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

#include "qseq/dilation.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "qseq/errors.hpp"

namespace qseq {
namespace {

void require_valid(const Povm& a, double tol, const char* what) {
  const auto issues = validation_issues(a, tol);
  if (!issues.empty()) {
    throw InvalidArgument(std::string(what) + ": invalid POVM: " + issues.front());
  }
}

}  // namespace

NaimarkDilation naimark_canonical(const Povm& a, double tol) {
  require_valid(a, tol, "naimark_canonical");
  const auto d = static_cast<Eigen::Index>(a.dim());
  const auto n = static_cast<Eigen::Index>(a.size());
  ComplexMatrix v(n * d, d);
  std::vector<Outcome> sharp;
  for (Eigen::Index x = 0; x < n; ++x) {
    const auto xi = static_cast<std::size_t>(x);
    v.block(x * d, 0, d, d) = sqrt_psd(a.effect(xi), tol);
    ComplexMatrix projector = ComplexMatrix::Zero(n * d, n * d);
    projector.block(x * d, x * d, d, d) = ComplexMatrix::Identity(d, d);
    sharp.push_back({a.label(xi), std::move(projector)});
  }
  return {static_cast<std::size_t>(n * d), Povm(std::move(sharp)), std::move(v)};
}

NaimarkDilation naimark_minimal(const Povm& a, double rank_tol, double tol) {
  require_valid(a, tol, "naimark_minimal");
  const auto d = static_cast<Eigen::Index>(a.dim());
  std::vector<ComplexMatrix> blocks;  // R_x^dagger sqrt(A(x)), r_x x d
  Eigen::Index dim_k = 0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    const ComplexMatrix range = range_isometry(a.effect(x), rank_tol);
    blocks.push_back(range.adjoint() * sqrt_psd(a.effect(x), tol));
    dim_k += range.cols();
  }
  ComplexMatrix v(dim_k, d);
  std::vector<Outcome> sharp;
  Eigen::Index offset = 0;
  for (std::size_t x = 0; x < blocks.size(); ++x) {
    const Eigen::Index r = blocks[x].rows();
    if (r > 0) v.block(offset, 0, r, d) = blocks[x];
    ComplexMatrix projector = ComplexMatrix::Zero(dim_k, dim_k);
    if (r > 0) projector.block(offset, offset, r, r) = ComplexMatrix::Identity(r, r);
    sharp.push_back({a.label(x), std::move(projector)});
    offset += r;
  }
  return {static_cast<std::size_t>(dim_k), Povm(std::move(sharp)), std::move(v)};
}

ComplexMatrix spanning_set(const NaimarkDilation& d) {
  const Eigen::Index cols_per = d.v.cols();
  ComplexMatrix out(static_cast<Eigen::Index>(d.dim_k),
                    cols_per * static_cast<Eigen::Index>(d.sharp.size()));
  for (std::size_t x = 0; x < d.sharp.size(); ++x) {
    out.middleCols(static_cast<Eigen::Index>(x) * cols_per, cols_per) =
        d.sharp.effect(x) * d.v;
  }
  return out;
}

bool is_minimal(const NaimarkDilation& d, double rank_tol) {
  return numerical_rank(spanning_set(d), rank_tol) == d.dim_k;
}

bool verify_dilation(const Povm& a, const NaimarkDilation& d, double tol) {
  if (d.v.rows() != static_cast<Eigen::Index>(d.dim_k) ||
      d.v.cols() != static_cast<Eigen::Index>(a.dim()) || d.sharp.dim() != d.dim_k) {
    return false;
  }
  if (d.sharp.labels() != a.labels()) return false;
  if (isometry_error(d.v) > tol) return false;
  if (!validate(d.sharp, tol) || !is_sharp(d.sharp, tol)) return false;
  for (std::size_t x = 0; x < a.size(); ++x) {
    const ComplexMatrix compressed = d.v.adjoint() * d.sharp.effect(x) * d.v;
    if (frobenius_distance(compressed, a.effect(x)) > tol) return false;
  }
  return true;
}

double intertwining_error(const ConnectingIsometry& j, const NaimarkDilation& first,
                          const NaimarkDilation& second) {
  double worst = isometry_error(j.j);
  for (std::size_t x = 0; x < first.sharp.size(); ++x) {
    const ComplexMatrix lhs = j.j * first.sharp.effect(x);
    const ComplexMatrix rhs = second.sharp.effect(x) * j.j;
    worst = std::max(worst, frobenius_distance(lhs, rhs));
  }
  return std::max(worst, frobenius_distance(j.j * first.v, second.v));
}

ConnectingIsometry connecting_isometry(const NaimarkDilation& minimal,
                                       const NaimarkDilation& other, double tol,
                                       double rank_tol) {
  if (minimal.sharp.labels() != other.sharp.labels()) {
    throw InvalidArgument("connecting_isometry: dilations have different outcome sets");
  }
  if (minimal.v.cols() != other.v.cols()) {
    throw InvalidArgument("connecting_isometry: dilations act on different inputs");
  }
  for (const Label& x : minimal.sharp.labels()) {
    const ComplexMatrix first = minimal.v.adjoint() * minimal.sharp.effect(x) * minimal.v;
    const ComplexMatrix second = other.v.adjoint() * other.sharp.effect(x) * other.v;
    if (frobenius_distance(first, second) > tol) {
      throw InvalidArgument("connecting_isometry: the dilations describe different POVMs (outcome " +
                            format_label(x) + ")");
    }
  }
  const ComplexMatrix s1 = spanning_set(minimal);
  const ComplexMatrix s2 = spanning_set(other);
  const std::size_t rank = numerical_rank(s1, rank_tol);
  if (rank != minimal.dim_k) {
    std::ostringstream msg;
    msg << "connecting_isometry: first dilation is not minimal (spanning rank "
        << rank << " < " << minimal.dim_k << ")";
    throw NotMinimalError(msg.str());
  }
  ConnectingIsometry j{s2 * pseudo_inverse(s1, Defaults::kPinvCutoff)};
  const double residual = frobenius_distance(j.j * s1, s2);
  if (residual > tol) {
    std::ostringstream msg;
    msg << "connecting_isometry: least-squares residual " << residual << " exceeds " << tol;
    throw ConvergenceError(msg.str());
  }
  const double err = intertwining_error(j, minimal, other);
  if (err > tol) {
    std::ostringstream msg;
    msg << "connecting_isometry: intertwining identities fail by " << err;
    throw ConvergenceError(msg.str());
  }
  return j;
}

NaimarkDilation coarse_grain(const NaimarkDilation& d,
                             std::span<const std::size_t> arities,
                             std::size_t factor) {
  const ProductLabeledPovm joint(d.sharp,
                                 std::vector<std::size_t>(arities.begin(), arities.end()));
  return {d.dim_k, joint.marginal(factor), d.v};
}

}  // namespace qseq
