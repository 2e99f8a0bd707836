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

#ifndef QSEQ_POVM_HPP_
#define QSEQ_POVM_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qseq/config.hpp"
#include "qseq/linalg.hpp"

namespace qseq {

/// Outcome label. Binary observables use {-1} / {+1}; joint observables
/// concatenate the labels of their factors.
using Label = std::vector<int>;

std::string format_label(const Label& label);

struct Outcome {
  Label label;
  ComplexMatrix effect;
};

/// A finite outcome-labelled family of operators on C^dim.
///
/// Construction enforces structure only: at least one outcome, all effects
/// dim x dim, labels unique. Outcomes are stored in lexicographic label order.
/// Positivity and normalization are checked by validate(), so an invalid
/// candidate (say, read from a file) can still be represented and reported.
class Povm {
 public:
  explicit Povm(std::vector<Outcome> outcomes);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return outcomes_.size(); }
  const std::vector<Outcome>& outcomes() const { return outcomes_; }

  const Label& label(std::size_t i) const { return outcomes_.at(i).label; }
  const ComplexMatrix& effect(std::size_t i) const {
    return outcomes_.at(i).effect;
  }
  /// Throws InvalidArgument when the label is absent.
  const ComplexMatrix& effect(const Label& label) const;
  std::optional<std::size_t> index_of(const Label& label) const;
  std::vector<Label> labels() const;
  std::vector<ComplexMatrix> effects() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Outcome> outcomes_;
};

/// Everything wrong with p at the given tolerance, one message per problem.
/// Empty means valid. Normalization is checked at tol*sqrt(dim).
std::vector<std::string> validation_issues(const Povm& p,
                                           double tol = Defaults::kPsdTol);
bool validate(const Povm& p, double tol = Defaults::kPsdTol);

bool is_sharp(const Povm& p, double tol = Defaults::kPsdTol);
bool commutes(const Povm& p, const Povm& q, double tol = Defaults::kPsdTol);

/// Largest Frobenius distance between effects with equal labels. Throws
/// InvalidArgument when the label sets or dimensions differ.
double max_effect_distance(const Povm& p, const Povm& q);
/// Observable equality: same labels, effects equal within tol.
bool approx_equal(const Povm& p, const Povm& q, double tol);

/// The single-outcome observable {I} on C^dim, label {0}.
Povm trivial_povm(std::size_t dim);
/// True iff p has one outcome (necessarily I when p is valid).
bool is_trivial(const Povm& p, double tol = Defaults::kPsdTol);

/// A POVM whose outcome set is a Cartesian product of factor outcome sets.
/// Each label is the concatenation of one label per factor; `arities` gives
/// the length of each factor's piece.
class ProductLabeledPovm {
 public:
  /// Throws InvalidArgument when labels do not split according to arities or
  /// the label set is not a full Cartesian product.
  ProductLabeledPovm(Povm povm, std::vector<std::size_t> arities);

  const Povm& povm() const { return povm_; }
  const std::vector<std::size_t>& arities() const { return arities_; }
  std::size_t factor_count() const { return arities_.size(); }
  std::size_t dim() const { return povm_.dim(); }

  /// Distinct labels of one factor in lexicographic order.
  const std::vector<Label>& factor_labels(std::size_t factor) const {
    return factor_labels_.at(factor);
  }
  /// Splits a full label into its per-factor pieces.
  std::vector<Label> split(const Label& label) const;
  /// Sum over all other factors.
  Povm marginal(std::size_t factor) const;

 private:
  Povm povm_;
  std::vector<std::size_t> arities_;
  std::vector<std::vector<Label>> factor_labels_;
};

/// (first factor marginal, second factor marginal) of a two-factor POVM.
std::pair<Povm, Povm> marginals(const ProductLabeledPovm& m);

/// Builds a two-factor POVM M(x, y) from a function of the factor indices.
/// Labels are concat(first_labels[i], second_labels[j]).
template <typename Fn>
ProductLabeledPovm make_joint(const std::vector<Label>& first_labels,
                              const std::vector<Label>& second_labels,
                              Fn&& effect_at);

/// z -> sum_y kernel(y, z) p(y). Rows of `kernel` follow p's outcome order;
/// column z gets new_labels[z]. Each row must be a probability vector
/// (entries >= -tol, row sum 1 within tol); otherwise InvalidArgument.
Povm post_process(const Povm& p, const Eigen::MatrixXd& kernel,
                  std::vector<Label> new_labels,
                  double tol = Defaults::kPsdTol);

using BlochVector = std::array<double, 3>;

/// Unbiased binary qubit observable {+1, -1} -> (I +- t axis.sigma)/2.
/// Requires 0 < t <= 1 and a unit axis (within tol).
Povm qubit_binary(double t, const BlochVector& axis,
                  double tol = Defaults::kPsdTol);
/// Axis (sin theta, 0, cos theta) in the x-z plane.
BlochVector xz_axis(double theta);

/// The four-outcome observable with labels (+-1, +-1) whose first-index
/// marginal is qubit_binary(s, z). Requires 0 < s < 1.
Povm observable_C(double s);

/// x, y and z spin components, each with sharpness t in (0, 1].
std::array<Povm, 3> noisy_spin_triplet(double t);

/// Bloch data of an unbiased binary qubit observable. `plus` is the outcome
/// with the larger label and effect (I + t axis.sigma)/2.
struct QubitBinaryForm {
  double t = 0.0;
  BlochVector axis{0.0, 0.0, 1.0};
  Label plus;
  Label minus;
};

/// Structural recognition: dim 2, two outcomes, each effect of the form
/// (I +- v.sigma)/2 within tol. Returns nullopt otherwise.
std::optional<QubitBinaryForm> as_qubit_binary(const Povm& p,
                                               double tol = Defaults::kPsdTol);

// ---------------------------------------------------------------------------

template <typename Fn>
ProductLabeledPovm make_joint(const std::vector<Label>& first_labels,
                              const std::vector<Label>& second_labels,
                              Fn&& effect_at) {
  std::vector<Outcome> outcomes;
  outcomes.reserve(first_labels.size() * second_labels.size());
  for (std::size_t i = 0; i < first_labels.size(); ++i) {
    for (std::size_t j = 0; j < second_labels.size(); ++j) {
      Label label = first_labels[i];
      label.insert(label.end(), second_labels[j].begin(), second_labels[j].end());
      outcomes.push_back({std::move(label), effect_at(i, j)});
    }
  }
  return ProductLabeledPovm(
      Povm(std::move(outcomes)),
      {first_labels.front().size(), second_labels.front().size()});
}

}  // namespace qseq

#endif  // QSEQ_POVM_HPP_
