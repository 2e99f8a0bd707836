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

#include "qseq/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qseq/errors.hpp"
#include "qseq/universal.hpp"

namespace qseq {
namespace {

// Checked after the solver reports Feasible, using domain operations rather
// than the flattened constraint matrix. A witness that fails goes back to
// Undecided.
void demote_unless(bool ok, FeasibilityOutcome& out) {
  if (ok || !out.feasible()) return;
  out.status = FeasibilityStatus::kUndecided;
  out.witness.reset();
}

bool all_psd(const std::vector<ComplexMatrix>& blocks, double tol) {
  return std::all_of(blocks.begin(), blocks.end(),
                     [tol](const ComplexMatrix& m) { return is_psd(m, tol); });
}

bool decomposition_holds(const DecompositionProblem& p,
                         const std::vector<ComplexMatrix>& parts, double tol) {
  if (parts.size() != p.targets.size() || !all_psd(parts, tol)) return false;
  if (frobenius_distance(sum(parts), p.total) > tol) return false;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const ComplexMatrix reduced =
        partial_trace(parts[k], p.dim_out, p.dim_in, Factor::kFirst);
    if (frobenius_distance(reduced, p.targets[k].effect.transpose()) > tol) return false;
  }
  return true;
}

void require_valid(const Povm& p, const char* what) {
  const auto issues = validation_issues(p, Defaults::kPsdTol);
  if (!issues.empty()) {
    throw InvalidArgument(std::string(what) + ": invalid POVM: " + issues.front());
  }
}

std::size_t uniform_arity(const Povm& p, const char* what) {
  const std::size_t arity = p.label(0).size();
  for (const Label& l : p.labels()) {
    if (l.size() != arity) {
      throw InvalidArgument(std::string(what) + ": labels have mixed lengths");
    }
  }
  return arity;
}

FeasibilityOutcome immediate_feasible(std::vector<ComplexMatrix> witness, double residual) {
  FeasibilityOutcome out;
  out.status = FeasibilityStatus::kFeasible;
  out.witness = std::move(witness);
  out.residual = residual;
  out.iterations = 0;
  return out;
}

}  // namespace

FeasibilityOutcome decompose_psd(const DecompositionProblem& p, const SolverOptions& opts) {
  const auto n = static_cast<Eigen::Index>(p.dim_out * p.dim_in);
  if (p.total.rows() != n || p.total.cols() != n) {
    throw DimensionError("decompose_psd: total is not (dim_out*dim_in)-square");
  }
  if (p.targets.empty()) throw InvalidArgument("decompose_psd: no targets");
  for (const auto& target : p.targets) {
    if (target.effect.rows() != static_cast<Eigen::Index>(p.dim_in) ||
        target.effect.cols() != static_cast<Eigen::Index>(p.dim_in)) {
      throw DimensionError("decompose_psd: target " + format_label(target.label) +
                           " is not dim_in-square");
    }
  }
  if (!is_psd(p.total, Defaults::kPsdTol)) {
    throw InvalidArgument("decompose_psd: total is not positive semidefinite");
  }
  ComplexMatrix target_sum = ComplexMatrix::Zero(static_cast<Eigen::Index>(p.dim_in),
                                                 static_cast<Eigen::Index>(p.dim_in));
  for (const auto& target : p.targets) target_sum += target.effect.transpose();
  const ComplexMatrix reduced = partial_trace(p.total, p.dim_out, p.dim_in, Factor::kFirst);
  const double gap = frobenius_distance(target_sum, reduced);
  if (gap > std::max(opts.tol, Defaults::kPsdTol)) {
    std::ostringstream msg;
    msg << "decompose_psd: targets do not sum to the input marginal of total "
           "(distance "
        << gap << ")";
    throw NecessaryConditionError(msg.str());
  }

  const std::size_t parts = p.targets.size();
  const std::size_t d_out = p.dim_out;
  const std::size_t d_in = p.dim_in;
  // Face restriction: J_k <= total kills ker(total), and a kernel vector v of
  // the target forces J_k (e_i (x) v) = 0 for every output basis vector e_i.
  const auto n_size = static_cast<std::size_t>(n);
  const ComplexMatrix total_range = range_isometry(p.total, opts.tol);
  const ComplexMatrix total_kernel = identity(n_size) - total_range * total_range.adjoint();
  std::vector<ComplexMatrix> allowed;
  for (const auto& target : p.targets) {
    const ComplexMatrix range = range_isometry(target.effect.transpose(), opts.tol);
    const ComplexMatrix kernel = identity(d_in) - range * range.adjoint();
    const ComplexMatrix blocked =
        range_isometry(total_kernel + tensor(identity(d_out), kernel), opts.tol);
    allowed.push_back(identity(n_size) - blocked * blocked.adjoint());
  }
  auto restrict_to = [&allowed](std::size_t k) {
    return [p = allowed[k]](const ComplexMatrix& x) { return ComplexMatrix(p * x * p); };
  };
  PsdFeasibilityProblem problem(parts, n_size);
  std::vector<Term> all_parts;
  for (std::size_t k = 0; k < parts; ++k) all_parts.push_back({k, restrict_to(k)});
  problem.add_constraint(all_parts, p.total);
  for (std::size_t k = 0; k < parts; ++k) {
    problem.add_constraint(
        {{k,
          [d_out, d_in, p = allowed[k]](const ComplexMatrix& x) {
            return partial_trace(ComplexMatrix(p * x * p), d_out, d_in, Factor::kFirst);
          }}},
        p.targets[k].effect.transpose());
  }
  std::vector<ComplexMatrix> start;
  for (std::size_t k = 0; k < parts; ++k) {
    start.push_back(allowed[k] * p.total * allowed[k] / static_cast<double>(parts));
  }
  FeasibilityOutcome out = problem.solve(start, opts);
  if (out.witness) {
    for (std::size_t k = 0; k < parts; ++k) {
      ComplexMatrix& block = (*out.witness)[k];
      block = allowed[k] * block * allowed[k];
    }
  }
  demote_unless(out.witness && decomposition_holds(p, *out.witness, opts.tol), out);
  return out;
}

FeasibilityOutcome is_a_channel(const KrausChannel& c, const Povm& a,
                                const SolverOptions& opts) {
  if (a.dim() != c.dim_in()) {
    throw DimensionError("is_a_channel: observable does not act on the channel input");
  }
  if (c.has_partition()) {
    std::vector<Label> branch_labels;
    for (const Branch& br : c.partition()) branch_labels.push_back(br.label);
    if (branch_labels == a.labels()) {
      double worst = 0.0;
      std::vector<ComplexMatrix> parts;
      for (std::size_t x = 0; x < a.size(); ++x) {
        const ComplexMatrix traced =
            heisenberg_branch(c, a.label(x), identity(c.dim_out()));
        worst = std::max(worst, frobenius_distance(traced, a.effect(x)));
        parts.push_back(choi_of_branch(c, a.label(x)).matrix);
      }
      if (worst <= opts.tol) return immediate_feasible(std::move(parts), worst);
    }
  }
  DecompositionProblem problem{choi(c).matrix, {}, c.dim_out(), c.dim_in()};
  for (const Outcome& o : a.outcomes()) problem.targets.push_back({o.label, o.effect});
  return decompose_psd(problem, opts);
}

FeasibilityOutcome conjugate_is_b_channel(const KrausChannel& c, const Povm& b,
                                          const SolverOptions& opts) {
  if (b.dim() != c.dim_in()) {
    throw DimensionError("conjugate_is_b_channel: observable does not act on the input");
  }
  const KrausChannel complementary = conjugate(c);
  if (is_trivial(b, opts.tol)) {
    return immediate_feasible({choi(complementary).matrix}, 0.0);
  }
  return is_a_channel(complementary, b, opts);
}

Povm recover_b_prime(const KrausChannel& c, const Povm& b, const SolverOptions& opts) {
  const FeasibilityOutcome gate = conjugate_is_b_channel(c, b, opts);
  if (!gate.feasible()) {
    std::ostringstream msg;
    msg << "recover_b_prime: conjugate channel is not a B-channel (status "
        << to_string(gate.status) << ", residual " << gate.residual << ")";
    throw ConvergenceError(msg.str());
  }
  const std::size_t outcomes = b.size();
  const std::size_t n_out = c.dim_out();
  // Facial reduction: for v in ker B(y), <v, c^*(B'(y)) v> = 0 forces
  // B'(y) K_i v = 0, so each block is sandwiched by the projector onto the
  // complement of span{K_i v}. Without this the feasible set touches the
  // cone only on a face and Dykstra crawls.
  std::vector<ComplexMatrix> allowed;
  for (std::size_t y = 0; y < outcomes; ++y) {
    const ComplexMatrix range = range_isometry(b.effect(y), opts.tol);
    const ComplexMatrix kernel = identity(b.dim()) - range * range.adjoint();
    ComplexMatrix forbidden = ComplexMatrix::Zero(static_cast<Eigen::Index>(n_out),
                                                  static_cast<Eigen::Index>(n_out));
    for (const ComplexMatrix& k : c.kraus()) forbidden += k * kernel * k.adjoint();
    const ComplexMatrix f = range_isometry(forbidden, opts.tol);
    allowed.push_back(identity(n_out) - f * f.adjoint());
  }
  PsdFeasibilityProblem problem(outcomes, n_out);
  std::vector<Term> all;
  for (std::size_t y = 0; y < outcomes; ++y) {
    all.push_back({y, [p = allowed[y]](const ComplexMatrix& t) { return ComplexMatrix(p * t * p); }});
  }
  problem.add_constraint(all, identity(n_out));
  for (std::size_t y = 0; y < outcomes; ++y) {
    problem.add_constraint(
        {{y, [&c, p = allowed[y]](const ComplexMatrix& t) {
            return heisenberg_apply(c, ComplexMatrix(p * t * p));
          }}},
        b.effect(y));
  }
  const std::vector<ComplexMatrix> start(
      outcomes, ComplexMatrix::Zero(static_cast<Eigen::Index>(c.dim_out()),
                                    static_cast<Eigen::Index>(c.dim_out())));
  const FeasibilityOutcome out = problem.solve(start, opts);
  if (!out.feasible()) {
    std::ostringstream msg;
    msg << "recover_b_prime: no B' within tolerance after " << out.iterations
        << " iterations (residual " << out.residual << ")";
    throw ConvergenceError(msg.str());
  }
  std::vector<Outcome> effects;
  for (std::size_t y = 0; y < outcomes; ++y) {
    const ComplexMatrix& p = allowed[y];
    effects.push_back({b.label(y), ComplexMatrix(p * (*out.witness)[y] * p)});
  }
  Povm b_prime(std::move(effects));
  if (!all_psd(b_prime.effects(), opts.tol) ||
      !verify_sequential(c, b_prime, b, opts.tol)) {
    throw ConvergenceError("recover_b_prime: solver witness failed re-validation");
  }
  return b_prime;
}

JointSearch find_joint_observable(std::span<const Povm> observables,
                                  const SolverOptions& opts) {
  if (observables.empty()) {
    throw InvalidArgument("find_joint_observable: no observables given");
  }
  const std::size_t dim = observables.front().dim();
  std::vector<std::size_t> arities;
  for (const Povm& p : observables) {
    if (p.dim() != dim) throw DimensionError("find_joint_observable: dimension mismatch");
    require_valid(p, "find_joint_observable");
    arities.push_back(uniform_arity(p, "find_joint_observable"));
  }
  if (observables.size() > Defaults::kMaxJointObservables ||
      (observables.size() > 2 && dim > Defaults::kMaxMultiJointDim)) {
    throw InvalidArgument(
        "find_joint_observable: searches over three observables are limited to "
        "dimension 4, and more than three are not supported");
  }

  // Outcome tuples in lexicographic (mixed-radix) order.
  std::vector<std::vector<std::size_t>> tuples{{}};
  for (const Povm& p : observables) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& prefix : tuples) {
      for (std::size_t x = 0; x < p.size(); ++x) {
        next.push_back(prefix);
        next.back().push_back(x);
      }
    }
    tuples = std::move(next);
  }
  auto label_of = [&](const std::vector<std::size_t>& tuple) {
    Label label;
    for (std::size_t f = 0; f < tuple.size(); ++f) {
      const Label& part = observables[f].label(tuple[f]);
      label.insert(label.end(), part.begin(), part.end());
    }
    return label;
  };
  auto assemble = [&](const std::vector<ComplexMatrix>& blocks) {
    std::vector<Outcome> outcomes;
    for (std::size_t k = 0; k < tuples.size(); ++k) {
      outcomes.push_back({label_of(tuples[k]), blocks[k]});
    }
    return ProductLabeledPovm(Povm(std::move(outcomes)), arities);
  };
  auto marginals_hold = [&](const ProductLabeledPovm& m) {
    if (!all_psd(m.povm().effects(), opts.tol)) return false;
    for (std::size_t f = 0; f < observables.size(); ++f) {
      if (max_effect_distance(m.marginal(f), observables[f]) > opts.tol) return false;
    }
    return true;
  };

  if (observables.size() == 2 &&
      approx_equal(observables[0], observables[1], Defaults::kPsdTol)) {
    std::vector<ComplexMatrix> blocks;
    for (const auto& tuple : tuples) {
      blocks.push_back(tuple[0] == tuple[1]
                           ? observables[0].effect(tuple[0])
                           : ComplexMatrix::Zero(static_cast<Eigen::Index>(dim),
                                                 static_cast<Eigen::Index>(dim)));
    }
    JointSearch result{immediate_feasible(blocks, 0.0), assemble(blocks)};
    result.outcome.residual = 0.0;
    return result;
  }

  // Each joint effect sits below every marginal effect it sums into, so it
  // is supported on the intersection of their ranges. Restricting to that
  // face keeps Dykstra from crawling along the cone boundary when some
  // marginal effect is singular.
  std::vector<ComplexMatrix> allowed;
  for (const auto& tuple : tuples) {
    ComplexMatrix kernels = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    for (std::size_t f = 0; f < tuple.size(); ++f) {
      const ComplexMatrix range = range_isometry(observables[f].effect(tuple[f]), opts.tol);
      kernels += identity(dim) - range * range.adjoint();
    }
    const ComplexMatrix blocked = range_isometry(kernels, opts.tol);
    allowed.push_back(identity(dim) - blocked * blocked.adjoint());
  }
  PsdFeasibilityProblem problem(tuples.size(), dim);
  for (std::size_t f = 0; f < observables.size(); ++f) {
    for (std::size_t x = 0; x < observables[f].size(); ++x) {
      std::vector<Term> terms;
      for (std::size_t k = 0; k < tuples.size(); ++k) {
        if (tuples[k][f] != x) continue;
        terms.push_back({k, [p = allowed[k]](const ComplexMatrix& t) {
                           return ComplexMatrix(p * t * p);
                         }});
      }
      problem.add_constraint(terms, observables[f].effect(x));
    }
  }
  const std::vector<ComplexMatrix> start(
      tuples.size(),
      ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
  JointSearch result{problem.solve(start, opts), std::nullopt};
  if (result.outcome.witness) {
    for (std::size_t k = 0; k < tuples.size(); ++k) {
      ComplexMatrix& block = (*result.outcome.witness)[k];
      block = allowed[k] * block * allowed[k];
    }
  }
  if (result.outcome.feasible()) {
    ProductLabeledPovm joint = assemble(*result.outcome.witness);
    if (marginals_hold(joint)) {
      result.joint = std::move(joint);
    } else {
      demote_unless(false, result.outcome);
    }
  }
  return result;
}

JointSearch find_joint_observable(const Povm& a, const Povm& b, const SolverOptions& opts) {
  const std::vector<Povm> pair{a, b};
  return find_joint_observable(pair, opts);
}

double busch_margin(double s, double t, double theta) {
  constexpr double kAngleSlack = 1e-12;
  if (!(s > 0.0 && s <= 1.0) || !(t > 0.0 && t <= 1.0)) {
    throw InvalidArgument("busch_margin: s and t must lie in (0, 1]");
  }
  if (!(theta >= -kAngleSlack && theta <= std::numbers::pi / 2.0 + kAngleSlack)) {
    throw InvalidArgument("busch_margin: theta must lie in [0, pi/2]");
  }
  const double c = std::cos(theta);
  return 1.0 - (s * s + t * t - c * c * s * s * t * t);
}

bool busch_criterion(double s, double t, double theta, double slack) {
  return busch_margin(s, t, theta) >= -slack;
}

ProductLabeledPovm orthogonal_joint_observable(double s, double t) {
  if (!(s >= 0.0 && t >= 0.0) || s * s + t * t > 1.0 + Defaults::kBuschSlack) {
    throw InvalidArgument("orthogonal_joint_observable: requires s^2 + t^2 <= 1");
  }
  const ComplexMatrix id = identity(2);
  const ComplexMatrix sz = pauli_z();
  const ComplexMatrix sx = pauli_x();
  const std::vector<Label> signs{{-1}, {1}};
  return make_joint(signs, signs, [&](std::size_t i, std::size_t j) {
    const double si = signs[i][0];
    const double sj = signs[j][0];
    return ComplexMatrix(0.25 * (id + si * s * sz + sj * t * sx));
  });
}

}  // namespace qseq
