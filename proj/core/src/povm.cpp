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

#include "qseq/povm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "qseq/errors.hpp"

namespace qseq {

std::string format_label(const Label& label) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (i > 0) out << ',';
    out << label[i];
  }
  out << ')';
  return out.str();
}

Povm::Povm(std::vector<Outcome> outcomes) : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) {
    throw InvalidArgument("Povm: at least one outcome is required");
  }
  dim_ = static_cast<std::size_t>(outcomes_.front().effect.rows());
  for (const Outcome& o : outcomes_) {
    if (o.effect.rows() != o.effect.cols() ||
        static_cast<std::size_t>(o.effect.rows()) != dim_) {
      throw DimensionError("Povm: effect " + format_label(o.label) +
                           " is not " + std::to_string(dim_) + "-square");
    }
  }
  if (dim_ == 0) throw DimensionError("Povm: zero-dimensional effects");
  std::sort(outcomes_.begin(), outcomes_.end(),
            [](const Outcome& a, const Outcome& b) { return a.label < b.label; });
  for (std::size_t i = 1; i < outcomes_.size(); ++i) {
    if (outcomes_[i].label == outcomes_[i - 1].label) {
      throw InvalidArgument("Povm: duplicate label " +
                            format_label(outcomes_[i].label));
    }
  }
}

const ComplexMatrix& Povm::effect(const Label& label) const {
  const auto index = index_of(label);
  if (!index) {
    throw InvalidArgument("Povm: no outcome labelled " + format_label(label));
  }
  return outcomes_[*index].effect;
}

std::optional<std::size_t> Povm::index_of(const Label& label) const {
  const auto it = std::lower_bound(
      outcomes_.begin(), outcomes_.end(), label,
      [](const Outcome& o, const Label& l) { return o.label < l; });
  if (it == outcomes_.end() || it->label != label) return std::nullopt;
  return static_cast<std::size_t>(it - outcomes_.begin());
}

std::vector<Label> Povm::labels() const {
  std::vector<Label> out;
  out.reserve(outcomes_.size());
  for (const Outcome& o : outcomes_) out.push_back(o.label);
  return out;
}

std::vector<ComplexMatrix> Povm::effects() const {
  std::vector<ComplexMatrix> out;
  out.reserve(outcomes_.size());
  for (const Outcome& o : outcomes_) out.push_back(o.effect);
  return out;
}

std::vector<std::string> validation_issues(const Povm& p, double tol) {
  std::vector<std::string> issues;
  ComplexMatrix total = ComplexMatrix::Zero(static_cast<Eigen::Index>(p.dim()),
                                            static_cast<Eigen::Index>(p.dim()));
  for (const Outcome& o : p.outcomes()) {
    total += o.effect;
    const double herm = hermiticity_error(o.effect);
    if (herm > tol) {
      std::ostringstream msg;
      msg << "effect " << format_label(o.label)
          << " is not Hermitian (||E - E^dagger||_F = " << herm << ")";
      issues.push_back(msg.str());
      continue;
    }
    const double lowest = min_eigenvalue(o.effect);
    if (lowest < -tol) {
      std::ostringstream msg;
      msg << "effect " << format_label(o.label)
          << " is not positive (min eigenvalue " << lowest << ")";
      issues.push_back(msg.str());
    }
  }
  const double norm_err = frobenius_distance(total, identity(p.dim()));
  if (norm_err > tol * std::sqrt(static_cast<double>(p.dim()))) {
    std::ostringstream msg;
    msg << "normalization fails: ||sum of effects - I||_F = " << norm_err;
    issues.push_back(msg.str());
  }
  return issues;
}

bool validate(const Povm& p, double tol) {
  return validation_issues(p, tol).empty();
}

bool is_sharp(const Povm& p, double tol) {
  for (const Outcome& o : p.outcomes()) {
    if ((o.effect * o.effect - o.effect).norm() > tol) return false;
  }
  return true;
}

bool commutes(const Povm& p, const Povm& q, double tol) {
  if (p.dim() != q.dim()) throw DimensionError("commutes: dimension mismatch");
  for (const Outcome& a : p.outcomes()) {
    for (const Outcome& b : q.outcomes()) {
      if ((a.effect * b.effect - b.effect * a.effect).norm() > tol) return false;
    }
  }
  return true;
}

double max_effect_distance(const Povm& p, const Povm& q) {
  if (p.dim() != q.dim()) {
    throw InvalidArgument("max_effect_distance: dimension mismatch");
  }
  if (p.labels() != q.labels()) {
    throw InvalidArgument("max_effect_distance: label sets differ");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    worst = std::max(worst, frobenius_distance(p.effect(i), q.effect(i)));
  }
  return worst;
}

bool approx_equal(const Povm& p, const Povm& q, double tol) {
  if (p.dim() != q.dim() || p.labels() != q.labels()) return false;
  return max_effect_distance(p, q) <= tol;
}

Povm trivial_povm(std::size_t dim) {
  return Povm({{Label{0}, identity(dim)}});
}

bool is_trivial(const Povm& p, double tol) {
  return p.size() == 1 && frobenius_distance(p.effect(0), identity(p.dim())) <= tol;
}

ProductLabeledPovm::ProductLabeledPovm(Povm povm, std::vector<std::size_t> arities)
    : povm_(std::move(povm)), arities_(std::move(arities)) {
  if (arities_.empty()) {
    throw InvalidArgument("ProductLabeledPovm: at least one factor is required");
  }
  std::size_t width = 0;
  for (std::size_t a : arities_) {
    if (a == 0) throw InvalidArgument("ProductLabeledPovm: zero-length factor");
    width += a;
  }
  std::vector<std::set<Label>> seen(arities_.size());
  for (const Outcome& o : povm_.outcomes()) {
    if (o.label.size() != width) {
      throw InvalidArgument("ProductLabeledPovm: label " + format_label(o.label) +
                            " does not have length " + std::to_string(width));
    }
    const std::vector<Label> parts = split(o.label);
    for (std::size_t f = 0; f < parts.size(); ++f) seen[f].insert(parts[f]);
  }
  std::size_t product = 1;
  for (const auto& s : seen) product *= s.size();
  // Labels are unique, so the count matching the product size means every
  // combination occurs.
  if (product != povm_.size()) {
    throw InvalidArgument(
        "ProductLabeledPovm: label set is not a full Cartesian product");
  }
  for (const auto& s : seen) factor_labels_.emplace_back(s.begin(), s.end());
}

std::vector<Label> ProductLabeledPovm::split(const Label& label) const {
  std::vector<Label> parts;
  parts.reserve(arities_.size());
  auto it = label.begin();
  for (std::size_t a : arities_) {
    parts.emplace_back(it, it + static_cast<std::ptrdiff_t>(a));
    it += static_cast<std::ptrdiff_t>(a);
  }
  return parts;
}

Povm ProductLabeledPovm::marginal(std::size_t factor) const {
  if (factor >= arities_.size()) {
    throw InvalidArgument("ProductLabeledPovm::marginal: no such factor");
  }
  std::map<Label, ComplexMatrix> sums;
  for (const Outcome& o : povm_.outcomes()) {
    Label key = split(o.label)[factor];
    auto [it, inserted] = sums.try_emplace(std::move(key), o.effect);
    if (!inserted) it->second += o.effect;
  }
  std::vector<Outcome> outcomes;
  outcomes.reserve(sums.size());
  for (auto& [label, effect] : sums) outcomes.push_back({label, std::move(effect)});
  return Povm(std::move(outcomes));
}

std::pair<Povm, Povm> marginals(const ProductLabeledPovm& m) {
  if (m.factor_count() != 2) {
    throw InvalidArgument("marginals: expected a two-factor joint observable");
  }
  return {m.marginal(0), m.marginal(1)};
}

Povm post_process(const Povm& p, const Eigen::MatrixXd& kernel,
                  std::vector<Label> new_labels, double tol) {
  if (static_cast<std::size_t>(kernel.rows()) != p.size()) {
    throw DimensionError("post_process: kernel needs one row per outcome");
  }
  if (static_cast<std::size_t>(kernel.cols()) != new_labels.size()) {
    throw DimensionError("post_process: kernel needs one column per new label");
  }
  for (Eigen::Index y = 0; y < kernel.rows(); ++y) {
    if (kernel.row(y).minCoeff() < -tol ||
        std::abs(kernel.row(y).sum() - 1.0) > tol) {
      throw InvalidArgument("post_process: kernel row " + std::to_string(y) +
                            " is not a probability vector");
    }
  }
  std::vector<Outcome> outcomes;
  outcomes.reserve(new_labels.size());
  for (Eigen::Index z = 0; z < kernel.cols(); ++z) {
    ComplexMatrix effect = ComplexMatrix::Zero(static_cast<Eigen::Index>(p.dim()),
                                               static_cast<Eigen::Index>(p.dim()));
    for (Eigen::Index y = 0; y < kernel.rows(); ++y) {
      effect += kernel(y, z) * p.effect(static_cast<std::size_t>(y));
    }
    outcomes.push_back({std::move(new_labels[static_cast<std::size_t>(z)]),
                        std::move(effect)});
  }
  return Povm(std::move(outcomes));
}

Povm qubit_binary(double t, const BlochVector& axis, double tol) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw InvalidArgument("qubit_binary: sharpness must lie in (0, 1]");
  }
  const double norm =
      std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (std::abs(norm - 1.0) > tol) {
    throw InvalidArgument("qubit_binary: axis is not a unit vector");
  }
  const ComplexMatrix n_sigma =
      axis[0] * pauli_x() + axis[1] * pauli_y() + axis[2] * pauli_z();
  const ComplexMatrix id = identity(2);
  return Povm({{Label{1}, 0.5 * (id + t * n_sigma)},
               {Label{-1}, 0.5 * (id - t * n_sigma)}});
}

BlochVector xz_axis(double theta) {
  return {std::sin(theta), 0.0, std::cos(theta)};
}

Povm observable_C(double s) {
  if (!(s > 0.0 && s < 1.0)) {
    throw InvalidArgument("observable_C: s must lie in the open interval (0, 1)");
  }
  const ComplexMatrix id = identity(2);
  const ComplexMatrix sx = pauli_x();
  const ComplexMatrix sz = pauli_z();
  return Povm({
      {Label{1, 1}, (1.0 + s) / 4.0 * (id + sz)},
      {Label{1, -1}, (1.0 - s) / 4.0 * (id - sz)},
      {Label{-1, 1}, (1.0 - s) / 4.0 * (id + sx)},
      {Label{-1, -1}, (1.0 - s) / 4.0 * (id - sx) + s / 2.0 * (id - sz)},
  });
}

std::array<Povm, 3> noisy_spin_triplet(double t) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw InvalidArgument("noisy_spin_triplet: t must lie in (0, 1]");
  }
  return {qubit_binary(t, {1.0, 0.0, 0.0}), qubit_binary(t, {0.0, 1.0, 0.0}),
          qubit_binary(t, {0.0, 0.0, 1.0})};
}

std::optional<QubitBinaryForm> as_qubit_binary(const Povm& p, double tol) {
  if (p.dim() != 2 || p.size() != 2) return std::nullopt;
  const ComplexMatrix& plus = p.effect(1);
  const ComplexMatrix& minus = p.effect(0);
  const BlochVector v{(plus * pauli_x()).trace().real(),
                      (plus * pauli_y()).trace().real(),
                      (plus * pauli_z()).trace().real()};
  const ComplexMatrix v_sigma = v[0] * pauli_x() + v[1] * pauli_y() + v[2] * pauli_z();
  const ComplexMatrix id = identity(2);
  if (frobenius_distance(plus, 0.5 * (id + v_sigma)) > tol ||
      frobenius_distance(minus, 0.5 * (id - v_sigma)) > tol) {
    return std::nullopt;
  }
  QubitBinaryForm form;
  form.t = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (form.t > 0.0) form.axis = {v[0] / form.t, v[1] / form.t, v[2] / form.t};
  form.plus = p.label(1);
  form.minus = p.label(0);
  return form;
}

}  // namespace qseq
