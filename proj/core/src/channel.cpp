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

#include "qseq/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qseq/errors.hpp"

namespace qseq {
namespace {

void require_operator(const ComplexMatrix& m, std::size_t dim, const char* what) {
  if (static_cast<std::size_t>(m.rows()) != dim ||
      static_cast<std::size_t>(m.cols()) != dim) {
    std::ostringstream msg;
    msg << what << ": expected a " << dim << "x" << dim << " operator, got "
        << m.rows() << "x" << m.cols();
    throw DimensionError(msg.str());
  }
}

void require_valid_povm(const Povm& p, double tol, const char* what) {
  const auto issues = validation_issues(p, tol);
  if (!issues.empty()) {
    throw InvalidArgument(std::string(what) + ": invalid POVM: " + issues.front());
  }
}

// |y><v| as a dim_out x dim_in matrix, scaled by sqrt(lambda).
ComplexMatrix pointer_kraus(std::size_t dim_out, std::size_t y, double lambda,
                            const ComplexMatrix& v) {
  ComplexMatrix k = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim_out), v.rows());
  k.row(static_cast<Eigen::Index>(y)) = std::sqrt(lambda) * v.adjoint();
  return k;
}

}  // namespace

KrausChannel::KrausChannel(std::size_t dim_in, std::size_t dim_out,
                           std::vector<ComplexMatrix> kraus,
                           std::optional<std::vector<Branch>> partition)
    : dim_in_(dim_in),
      dim_out_(dim_out),
      kraus_(std::move(kraus)),
      partition_(std::move(partition)) {
  if (dim_in_ == 0 || dim_out_ == 0) {
    throw DimensionError("KrausChannel: dimensions must be positive");
  }
  if (kraus_.empty()) {
    throw InvalidArgument("KrausChannel: at least one Kraus operator is required");
  }
  for (std::size_t i = 0; i < kraus_.size(); ++i) {
    if (static_cast<std::size_t>(kraus_[i].rows()) != dim_out_ ||
        static_cast<std::size_t>(kraus_[i].cols()) != dim_in_) {
      std::ostringstream msg;
      msg << "KrausChannel: Kraus operator " << i << " is " << kraus_[i].rows()
          << "x" << kraus_[i].cols() << ", expected " << dim_out_ << "x" << dim_in_;
      throw DimensionError(msg.str());
    }
  }
  if (!partition_) return;
  std::sort(partition_->begin(), partition_->end(),
            [](const Branch& a, const Branch& b) { return a.label < b.label; });
  std::vector<int> owner(kraus_.size(), -1);
  for (std::size_t b = 0; b < partition_->size(); ++b) {
    const Branch& branch = (*partition_)[b];
    if (b > 0 && branch.label == (*partition_)[b - 1].label) {
      throw InvalidArgument("KrausChannel: duplicate partition label " +
                            format_label(branch.label));
    }
    for (std::size_t idx : branch.kraus_indices) {
      if (idx >= kraus_.size()) {
        throw InvalidArgument("KrausChannel: partition index " +
                              std::to_string(idx) + " out of range");
      }
      if (owner[idx] != -1) {
        throw InvalidArgument("KrausChannel: Kraus operator " + std::to_string(idx) +
                              " appears in more than one branch");
      }
      owner[idx] = static_cast<int>(b);
    }
  }
  for (std::size_t i = 0; i < owner.size(); ++i) {
    if (owner[i] == -1) {
      throw InvalidArgument("KrausChannel: Kraus operator " + std::to_string(i) +
                            " belongs to no branch");
    }
  }
}

const std::vector<Branch>& KrausChannel::partition() const {
  if (!partition_) throw InvalidArgument("KrausChannel: channel has no partition");
  return *partition_;
}

const Branch& KrausChannel::branch(const Label& label) const {
  for (const Branch& b : partition()) {
    if (b.label == label) return b;
  }
  throw InvalidArgument("KrausChannel: no branch labelled " + format_label(label));
}

KrausChannel identity_channel(std::size_t dim) {
  return KrausChannel(dim, dim, {identity(dim)});
}

KrausChannel unitary_channel(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw DimensionError("unitary_channel: non-square");
  const auto d = static_cast<std::size_t>(u.rows());
  return KrausChannel(d, d, {u});
}

double trace_preservation_error(const KrausChannel& c) {
  ComplexMatrix total = ComplexMatrix::Zero(static_cast<Eigen::Index>(c.dim_in()),
                                            static_cast<Eigen::Index>(c.dim_in()));
  for (const ComplexMatrix& k : c.kraus()) total += k.adjoint() * k;
  return frobenius_distance(total, identity(c.dim_in()));
}

bool is_cptp(const KrausChannel& c, double tol) {
  return trace_preservation_error(c) <= tol;
}

void require_state(const ComplexMatrix& rho, std::size_t dim, double tol) {
  require_operator(rho, dim, "state");
  const double trace_err = std::abs(rho.trace() - Complex(1.0, 0.0));
  if (trace_err > tol) {
    throw InvalidArgument("state: trace differs from 1 by " +
                          std::to_string(trace_err));
  }
  if (!is_psd(rho, tol)) throw InvalidArgument("state: not positive semidefinite");
}

ComplexMatrix apply(const KrausChannel& c, const ComplexMatrix& state, double tol) {
  require_state(state, c.dim_in(), tol);
  return apply_map(c, state);
}

ComplexMatrix apply_map(const KrausChannel& c, const ComplexMatrix& x) {
  require_operator(x, c.dim_in(), "apply");
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(c.dim_out()),
                                          static_cast<Eigen::Index>(c.dim_out()));
  for (const ComplexMatrix& k : c.kraus()) out += k * x * k.adjoint();
  return out;
}

ComplexMatrix heisenberg_apply(const KrausChannel& c, const ComplexMatrix& t) {
  require_operator(t, c.dim_out(), "heisenberg_apply");
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(c.dim_in()),
                                          static_cast<Eigen::Index>(c.dim_in()));
  for (const ComplexMatrix& k : c.kraus()) out += k.adjoint() * t * k;
  return out;
}

ComplexMatrix apply_branch(const KrausChannel& c, const Label& label,
                           const ComplexMatrix& x) {
  require_operator(x, c.dim_in(), "apply_branch");
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(c.dim_out()),
                                          static_cast<Eigen::Index>(c.dim_out()));
  for (std::size_t i : c.branch(label).kraus_indices) {
    out += c.kraus()[i] * x * c.kraus()[i].adjoint();
  }
  return out;
}

ComplexMatrix heisenberg_branch(const KrausChannel& c, const Label& label,
                                const ComplexMatrix& t) {
  require_operator(t, c.dim_out(), "heisenberg_branch");
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(c.dim_in()),
                                          static_cast<Eigen::Index>(c.dim_in()));
  for (std::size_t i : c.branch(label).kraus_indices) {
    out += c.kraus()[i].adjoint() * t * c.kraus()[i];
  }
  return out;
}

KrausChannel compose(const KrausChannel& second, const KrausChannel& first) {
  if (second.dim_in() != first.dim_out()) {
    throw DimensionError("compose: output of the first channel does not match "
                         "the input of the second");
  }
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(second.kraus().size() * first.kraus().size());
  for (const ComplexMatrix& k2 : second.kraus()) {
    for (const ComplexMatrix& k1 : first.kraus()) kraus.push_back(k2 * k1);
  }
  return KrausChannel(first.dim_in(), second.dim_out(), std::move(kraus));
}

namespace {

ComplexMatrix choi_of_subset(const KrausChannel& c,
                             std::span<const std::size_t> indices) {
  const auto n = static_cast<Eigen::Index>(c.dim_out() * c.dim_in());
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  Eigen::VectorXcd v(n);
  for (std::size_t idx : indices) {
    const ComplexMatrix& k = c.kraus()[idx];
    // |K>> = sum_i K|i> (x) |i>, output factor first.
    for (Eigen::Index a = 0; a < k.rows(); ++a) {
      for (Eigen::Index i = 0; i < k.cols(); ++i) v(a * k.cols() + i) = k(a, i);
    }
    out += v * v.adjoint();
  }
  return out;
}

}  // namespace

ChoiMatrix choi(const KrausChannel& c) {
  std::vector<std::size_t> all(c.kraus().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return {choi_of_subset(c, all), c.dim_in(), c.dim_out()};
}

ChoiMatrix choi_of_branch(const KrausChannel& c, const Label& label) {
  return {choi_of_subset(c, c.branch(label).kraus_indices), c.dim_in(), c.dim_out()};
}

bool validate_choi(const ChoiMatrix& j, double tol) {
  if (!is_psd(j.matrix, tol)) return false;
  const ComplexMatrix reduced =
      partial_trace(j.matrix, j.dim_out, j.dim_in, Factor::kFirst);
  return frobenius_distance(reduced, identity(j.dim_in)) <= tol;
}

KrausChannel luders(const Povm& a, double tol) {
  require_valid_povm(a, tol, "luders");
  std::vector<ComplexMatrix> kraus;
  std::vector<Branch> branches;
  for (std::size_t x = 0; x < a.size(); ++x) {
    kraus.push_back(sqrt_psd(a.effect(x), tol));
    branches.push_back({a.label(x), {x}});
  }
  return KrausChannel(a.dim(), a.dim(), std::move(kraus), std::move(branches));
}

KrausChannel classical_channel(const Povm& b, double tol, double rank_tol) {
  require_valid_povm(b, tol, "classical_channel");
  std::vector<ComplexMatrix> kraus;
  std::vector<Branch> branches;
  for (std::size_t y = 0; y < b.size(); ++y) {
    const HermitianEigen eig = herm_eig(b.effect(y), tol);
    Branch branch{b.label(y), {}};
    for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
      const double lambda = eig.eigenvalues(k);
      if (lambda <= rank_tol) continue;
      branch.kraus_indices.push_back(kraus.size());
      kraus.push_back(pointer_kraus(b.size(), y, lambda, eig.eigenvectors.col(k)));
    }
    branches.push_back(std::move(branch));
  }
  return KrausChannel(b.dim(), b.size(), std::move(kraus), std::move(branches));
}

KrausChannel classical_channel(const ProductLabeledPovm& joint, double tol,
                               double rank_tol) {
  if (joint.factor_count() != 2) {
    throw InvalidArgument("classical_channel: expected a two-factor joint observable");
  }
  require_valid_povm(joint.povm(), tol, "classical_channel");
  const std::vector<Label>& xs = joint.factor_labels(0);
  const std::vector<Label>& ys = joint.factor_labels(1);
  std::vector<ComplexMatrix> kraus;
  std::vector<Branch> branches;
  for (const Label& x : xs) branches.push_back({x, {}});
  for (const Outcome& o : joint.povm().outcomes()) {
    const std::vector<Label> parts = joint.split(o.label);
    const auto xi = static_cast<std::size_t>(
        std::lower_bound(xs.begin(), xs.end(), parts[0]) - xs.begin());
    const auto yi = static_cast<std::size_t>(
        std::lower_bound(ys.begin(), ys.end(), parts[1]) - ys.begin());
    const HermitianEigen eig = herm_eig(o.effect, tol);
    for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
      const double lambda = eig.eigenvalues(k);
      if (lambda <= rank_tol) continue;
      branches[xi].kraus_indices.push_back(kraus.size());
      kraus.push_back(pointer_kraus(ys.size(), yi, lambda, eig.eigenvectors.col(k)));
    }
  }
  return KrausChannel(joint.dim(), ys.size(), std::move(kraus), std::move(branches));
}

StinespringForm stinespring(const KrausChannel& c) {
  const auto env = static_cast<Eigen::Index>(c.kraus().size());
  const auto out = static_cast<Eigen::Index>(c.dim_out());
  ComplexMatrix v(out * env, static_cast<Eigen::Index>(c.dim_in()));
  for (Eigen::Index i = 0; i < env; ++i) {
    const ComplexMatrix& k = c.kraus()[static_cast<std::size_t>(i)];
    for (Eigen::Index a = 0; a < out; ++a) v.row(a * env + i) = k.row(a);
  }
  return {std::move(v), c.dim_out(), static_cast<std::size_t>(env)};
}

ComplexMatrix reduce_to_output(const StinespringForm& s, const ComplexMatrix& x) {
  return partial_trace(s.v * x * s.v.adjoint(), s.dim_out, s.dim_env,
                       Factor::kSecond);
}

ComplexMatrix reduce_to_environment(const StinespringForm& s,
                                    const ComplexMatrix& x) {
  return partial_trace(s.v * x * s.v.adjoint(), s.dim_out, s.dim_env,
                       Factor::kFirst);
}

KrausChannel conjugate(const KrausChannel& c) {
  const auto env = static_cast<Eigen::Index>(c.kraus().size());
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(c.dim_out());
  for (Eigen::Index a = 0; a < static_cast<Eigen::Index>(c.dim_out()); ++a) {
    ComplexMatrix l(env, static_cast<Eigen::Index>(c.dim_in()));
    for (Eigen::Index i = 0; i < env; ++i) {
      l.row(i) = c.kraus()[static_cast<std::size_t>(i)].row(a);
    }
    kraus.push_back(std::move(l));
  }
  return KrausChannel(c.dim_in(), static_cast<std::size_t>(env), std::move(kraus));
}

bool nondisturbing(const KrausChannel& c, const Povm& b, double tol) {
  if (b.dim() != c.dim_out()) {
    throw DimensionError("nondisturbing: observable does not act on the output space");
  }
  for (const Outcome& o : b.outcomes()) {
    if (frobenius_distance(heisenberg_apply(c, o.effect), o.effect) > tol) {
      return false;
    }
  }
  return true;
}

std::vector<ComplexMatrix> state_basis(std::size_t d) {
  std::vector<ComplexMatrix> states;
  states.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i) states.push_back(basis_projector(d, i));
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const ComplexMatrix plus = r * (ket(d, i) + ket(d, j));
      const ComplexMatrix phase = r * (ket(d, i) + Complex(0.0, 1.0) * ket(d, j));
      states.push_back(plus * plus.adjoint());
      states.push_back(phase * phase.adjoint());
    }
  }
  return states;
}

}  // namespace qseq
