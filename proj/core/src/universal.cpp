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

#include "qseq/universal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "qseq/errors.hpp"

namespace qseq {
namespace {

void require_joint_of(const Povm& a, const ProductLabeledPovm& joint, double tol) {
  if (joint.factor_count() != 2) {
    throw InvalidArgument("expected a two-factor joint observable");
  }
  const Povm first = joint.marginal(0);
  if (first.dim() != a.dim() || first.labels() != a.labels()) {
    throw InvalidArgument("joint observable's first marginal has different outcomes");
  }
  const double mismatch = max_effect_distance(first, a);
  if (mismatch > tol) {
    std::ostringstream msg;
    msg << "joint observable's first marginal differs from A by " << mismatch;
    throw InvalidArgument(msg.str());
  }
}

}  // namespace

KrausChannel universal_channel(const Povm& a, double rank_tol, double tol) {
  const NaimarkDilation dilation = naimark_minimal(a, rank_tol, tol);
  std::vector<ComplexMatrix> kraus;
  std::vector<Branch> branches;
  for (std::size_t x = 0; x < a.size(); ++x) {
    kraus.push_back(dilation.sharp.effect(x) * dilation.v);
    branches.push_back({a.label(x), {x}});
  }
  return KrausChannel(a.dim(), dilation.dim_k, std::move(kraus), std::move(branches));
}

CompensationData compensation_data(const Povm& a, const ProductLabeledPovm& joint,
                                   double tol, double rank_tol) {
  require_joint_of(a, joint, tol);
  NaimarkDilation minimal = naimark_minimal(a, rank_tol);
  NaimarkDilation joint_dilation = naimark_canonical(joint.povm(), tol);
  NaimarkDilation coarse = coarse_grain(joint_dilation, joint.arities(), 0);
  ConnectingIsometry j = connecting_isometry(minimal, coarse, tol, rank_tol);
  return {std::move(minimal), std::move(joint_dilation), std::move(coarse), std::move(j)};
}

Povm modified_observable(const Povm& a, const ProductLabeledPovm& joint, double tol,
                         double rank_tol) {
  require_joint_of(a, joint, tol);
  const std::vector<Label>& ys = joint.factor_labels(1);
  if (ys.size() == 1) {
    const NaimarkDilation minimal = naimark_minimal(a, rank_tol);
    return Povm({{ys.front(), identity(minimal.dim_k)}});
  }
  const CompensationData data = compensation_data(a, joint, tol, rank_tol);
  std::map<Label, ComplexMatrix> parts;
  const ComplexMatrix& j = data.j.j;
  for (std::size_t k = 0; k < joint.povm().size(); ++k) {
    const Label y = joint.split(joint.povm().label(k))[1];
    const ComplexMatrix term = j.adjoint() * data.joint_dilation.sharp.effect(k) * j;
    auto [it, inserted] = parts.try_emplace(y, term);
    if (!inserted) it->second += term;
  }
  std::vector<Outcome> outcomes;
  for (auto& [label, effect] : parts) {
    outcomes.push_back({label, 0.5 * (effect + effect.adjoint())});
  }
  return Povm(std::move(outcomes));
}

KrausChannel gamma_channel(const Povm& a, const ProductLabeledPovm& joint, double tol,
                           double rank_tol) {
  return classical_channel(modified_observable(a, joint, tol, rank_tol),
                           Defaults::kPsdTol, rank_tol);
}

double sequential_residual(const KrausChannel& channel, const Povm& b_prime,
                           const Povm& b) {
  if (b_prime.dim() != channel.dim_out()) {
    throw DimensionError("sequential_residual: B' does not act on the channel output");
  }
  if (b.dim() != channel.dim_in()) {
    throw DimensionError("sequential_residual: B does not act on the channel input");
  }
  if (b_prime.labels() != b.labels()) {
    throw InvalidArgument("sequential_residual: B' and B have different outcomes");
  }
  double worst = 0.0;
  for (std::size_t y = 0; y < b.size(); ++y) {
    worst = std::max(worst, frobenius_distance(heisenberg_apply(channel, b_prime.effect(y)),
                                               b.effect(y)));
  }
  return worst;
}

bool verify_sequential(const KrausChannel& channel, const Povm& b_prime, const Povm& b,
                       double tol) {
  return sequential_residual(channel, b_prime, b) <= tol;
}

ProductLabeledPovm implemented_joint(const KrausChannel& channel, const Povm& b_prime) {
  if (!channel.has_partition()) {
    throw InvalidArgument("implemented_joint: channel has no outcome partition");
  }
  if (b_prime.dim() != channel.dim_out()) {
    throw DimensionError("implemented_joint: B' does not act on the channel output");
  }
  const auto& branches = channel.partition();
  const std::size_t x_arity = branches.front().label.size();
  const std::size_t y_arity = b_prime.label(0).size();
  for (const Branch& br : branches) {
    if (br.label.size() != x_arity) {
      throw InvalidArgument("implemented_joint: branch labels have mixed lengths");
    }
  }
  for (const Label& y : b_prime.labels()) {
    if (y.size() != y_arity) {
      throw InvalidArgument("implemented_joint: B' labels have mixed lengths");
    }
  }
  std::vector<Outcome> outcomes;
  for (const Branch& br : branches) {
    for (const Outcome& o : b_prime.outcomes()) {
      Label label = br.label;
      label.insert(label.end(), o.label.begin(), o.label.end());
      outcomes.push_back({std::move(label), heisenberg_branch(channel, br.label, o.effect)});
    }
  }
  return ProductLabeledPovm(Povm(std::move(outcomes)), {x_arity, y_arity});
}

SequentialScheme make_scheme(const Povm& first, const KrausChannel& channel,
                             const Povm& second, double tol) {
  if (!channel.has_partition()) {
    throw InvalidArgument("make_scheme: channel has no outcome partition");
  }
  if (first.dim() != channel.dim_in()) {
    throw DimensionError("make_scheme: A does not act on the channel input");
  }
  std::vector<Label> branch_labels;
  for (const Branch& br : channel.partition()) branch_labels.push_back(br.label);
  if (branch_labels != first.labels()) {
    throw InvalidArgument("make_scheme: channel branches do not match A's outcomes");
  }
  for (const ComplexMatrix& rho : state_basis(first.dim())) {
    for (std::size_t x = 0; x < first.size(); ++x) {
      const Complex branch_trace = apply_branch(channel, first.label(x), rho).trace();
      const Complex expected = (rho * first.effect(x)).trace();
      if (std::abs(branch_trace - expected) > tol) {
        throw InvalidArgument("make_scheme: channel is not an A-channel at outcome " +
                              format_label(first.label(x)));
      }
    }
  }
  ProductLabeledPovm implemented = implemented_joint(channel, second);
  if (max_effect_distance(implemented.marginal(0), first) > tol) {
    throw InvalidArgument("make_scheme: implemented first marginal differs from A");
  }
  return {first, channel, second, std::move(implemented)};
}

double factorization_residual(const Povm& a, const ProductLabeledPovm& joint, double tol,
                              double rank_tol) {
  const KrausChannel lambda_b = classical_channel(joint.marginal(1), Defaults::kPsdTol,
                                                  rank_tol);
  const KrausChannel lambda_a = universal_channel(a, rank_tol);
  const KrausChannel gamma = gamma_channel(a, joint, tol, rank_tol);
  double worst = 0.0;
  for (const ComplexMatrix& rho : state_basis(a.dim())) {
    const ComplexMatrix direct = qseq::apply(lambda_b, rho);
    const ComplexMatrix via = qseq::apply(gamma, qseq::apply(lambda_a, rho));
    worst = std::max(worst, frobenius_distance(direct, via));
  }
  return worst;
}

double auxiliary_formula_residual(const CompensationData& data,
                                  const ProductLabeledPovm& joint) {
  const ComplexMatrix& j = data.j.j;
  const Povm& a_hat = data.minimal.sharp;
  double worst = 0.0;
  for (std::size_t k = 0; k < joint.povm().size(); ++k) {
    const Label x = joint.split(joint.povm().label(k))[0];
    const ComplexMatrix mj = data.joint_dilation.sharp.effect(k) * j;
    for (std::size_t xp = 0; xp < a_hat.size(); ++xp) {
      const ComplexMatrix lhs = mj * a_hat.effect(xp);
      if (a_hat.label(xp) == x) {
        worst = std::max(worst, frobenius_distance(lhs, mj));
      } else {
        worst = std::max(worst, lhs.norm());
      }
    }
  }
  return worst;
}

KrausChannel pull_back_output(const KrausChannel& channel, const ComplexMatrix& v) {
  if (static_cast<std::size_t>(v.rows()) != channel.dim_out()) {
    throw DimensionError("pull_back_output: isometry does not map into the output");
  }
  std::vector<ComplexMatrix> kraus;
  for (const ComplexMatrix& k : channel.kraus()) kraus.push_back(v.adjoint() * k);
  std::optional<std::vector<Branch>> partition;
  if (channel.has_partition()) partition = channel.partition();
  return KrausChannel(channel.dim_in(), static_cast<std::size_t>(v.cols()),
                      std::move(kraus), std::move(partition));
}

}  // namespace qseq
