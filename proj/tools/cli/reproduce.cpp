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

#include "cli/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>

#include "qseq/channel.hpp"
#include "qseq/dilation.hpp"
#include "qseq/feasibility.hpp"
#include "qseq/io.hpp"
#include "qseq/universal.hpp"

namespace qseq::cli {
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kS = 0.8;
constexpr double kFloorBound = 1e-4;
constexpr double kBoundaryGap = 1e-3;
constexpr double kIdentityTol = 1e-10;
constexpr double kMarginalTol = 1e-12;
constexpr double kDilationTol = 1e-9;
constexpr double kProofTol = 1e-9;

CheckStatus pass_if(bool ok) { return ok ? CheckStatus::kPass : CheckStatus::kFail; }

double floor_of(const FeasibilityOutcome& o) {
  return o.infeasibility_floor.value_or(o.residual);
}

// M(x, c) = delta(x, c_1) C(c) for the four-outcome C: its first marginal is
// A_s and its second is C itself.
ProductLabeledPovm refinement_joint(const Povm& a, const Povm& c) {
  return make_joint(a.labels(), c.labels(), [&](std::size_t x, std::size_t y) {
    return c.label(y).front() == a.label(x).front()
               ? ComplexMatrix(c.effect(y))
               : ComplexMatrix(ComplexMatrix::Zero(2, 2));
  });
}

struct UniversalCase {
  std::string name;
  Povm b;
  std::optional<ProductLabeledPovm> joint;
  FeasibilityOutcome search;
  bool from_solver = false;
};

struct WitnessTally {
  std::size_t checked = 0;
  std::size_t failed = 0;
  void record(const Povm& a, const Povm& b, const JointSearch& s, double tol) {
    if (!s.joint) return;
    ++checked;
    const auto [ma, mb] = marginals(*s.joint);
    bool ok = max_effect_distance(ma, a) <= tol && max_effect_distance(mb, b) <= tol;
    for (const ComplexMatrix& e : s.joint->povm().effects()) ok = ok && is_psd(e, tol);
    if (!ok) ++failed;
  }
};

class Harness {
 public:
  Harness(fs::path out_dir, const GlobalOptions& g, Report& report)
      : out_(std::move(out_dir)), g_(g), report_(report) {}

  void busch_grid();
  void luders_binary();
  void luders_not_universal();
  void universal_property();
  void sharp_reduction();
  void minimal_dimension();
  void triplet();
  void duality();
  void auxiliary_formula();
  void factorization();
  void witness_revalidation();

 private:
  const Povm& a() {
    if (!a_) a_ = qubit_binary(kS, xz_axis(0.0));
    return *a_;
  }
  const std::vector<UniversalCase>& universal_cases();

  struct GridSummary {
    std::size_t points = 0;
    std::size_t excluded = 0;
    std::size_t feasible = 0;
    std::size_t mismatches = 0;
    double worst_feasible = 0.0;
    double lowest_floor = std::numeric_limits<double>::infinity();
    double seconds = 0.0;
  };
  GridSummary& grid();

  void add(Check check) { report_.add(std::move(check)); }

  fs::path out_;
  const GlobalOptions& g_;
  Report& report_;
  std::optional<Povm> a_;
  std::optional<std::vector<UniversalCase>> cases_;
  WitnessTally tally_;
  std::optional<GridSummary> grid_;
};

Harness::GridSummary& Harness::grid() {
  if (grid_) return *grid_;
  Stopwatch watch;
  const SolverOptions opts = solver_options(g_);
  GridSummary sum;
  io::Json bad = io::Json::array();
  for (int k = 0; k <= 4; ++k) {
    const double theta = k * kPi / 8.0;
    for (int i = 1; i <= 20; ++i) {
      for (int j = 1; j <= 20; ++j) {
        const double s = 0.05 * i;
        const double t = 0.05 * j;
        if (std::abs(busch_margin(s, t, theta)) < kBoundaryGap) {
          ++sum.excluded;
          continue;
        }
        ++sum.points;
        const Povm a = qubit_binary(s, xz_axis(0.0));
        const Povm b = qubit_binary(t, xz_axis(theta));
        const JointSearch search = find_joint_observable(a, b, opts);
        tally_.record(a, b, search, opts.tol);
        const bool expected = busch_criterion(s, t, theta);
        bool ok = search.outcome.feasible() == expected;
        if (search.outcome.feasible()) {
          ++sum.feasible;
          sum.worst_feasible = std::max(sum.worst_feasible, search.outcome.residual);
          ok = ok && search.outcome.residual <= opts.tol;
        } else {
          sum.lowest_floor = std::min(sum.lowest_floor, floor_of(search.outcome));
          ok = ok && floor_of(search.outcome) >= kFloorBound;
        }
        if (!ok) {
          ++sum.mismatches;
          bad.push_back({{"s", s}, {"t", t}, {"theta", theta},
                         {"status", std::string(to_string(search.outcome.status))},
                         {"residual", search.outcome.residual}});
        }
      }
    }
  }
  io::write_json(out_ / "busch_grid.json",
                 {{"points", sum.points}, {"excluded", sum.excluded}, {"mismatches", bad}});
  sum.seconds = watch.seconds();
  grid_ = sum;
  return *grid_;
}

void Harness::busch_grid() {
  const GridSummary& sum = grid();
  add({"busch-grid", "find_joint_observable vs busch_criterion", g_.tol,
       pass_if(sum.mismatches == 0),
       {{"points", sum.points},
        {"excluded_near_boundary", sum.excluded},
        {"feasible", sum.feasible},
        {"mismatches", sum.mismatches},
        {"max_feasible_residual", sum.worst_feasible},
        {"min_infeasible_floor", sum.lowest_floor}},
       "", sum.seconds});
}

void Harness::luders_binary() {
  Stopwatch watch;
  const KrausChannel lud = luders(a());
  double worst = 0.0;
  io::Json rows = io::Json::array();
  bool recognized = true;
  for (int k = 1; k <= 4; ++k) {
    const double theta = k * kPi / 8.0;
    const Povm b1 = qubit_binary(1.0, xz_axis(theta));
    std::vector<Outcome> pulled;
    for (const Outcome& o : b1.outcomes()) {
      pulled.push_back({o.label, heisenberg_apply(lud, o.effect)});
    }
    const auto form = as_qubit_binary(Povm(std::move(pulled)), kIdentityTol);
    if (!form) {
      recognized = false;
      continue;
    }
    const double theta_imp = std::acos(std::min(1.0, std::abs(form->axis[2])));
    const double c = std::cos(theta_imp);
    const double gap =
        std::abs(kS * kS + form->t * form->t - c * c * kS * kS * form->t * form->t - 1.0);
    worst = std::max(worst, gap);
    rows.push_back({{"theta", theta}, {"t_imp", form->t}, {"theta_imp", theta_imp},
                    {"gap", gap}});
  }
  add({"luders-binary", "heisenberg_apply(luders(A_0.8), B_1,theta)", kIdentityTol,
       pass_if(recognized && worst <= kIdentityTol), {{"max_gap", worst}, {"cases", rows}},
       recognized ? "" : "implemented observable is not an unbiased qubit binary",
       watch.seconds()});
}

void Harness::luders_not_universal() {
  Stopwatch watch;
  const Povm c = observable_C(kS);
  io::write_json(out_ / "C_0.8.json", io::povm_to_json(c));
  const bool valid = validate(c);
  const ProductLabeledPovm split(c, {1, 1});
  const double marginal_gap = max_effect_distance(split.marginal(0), a());
  const FeasibilityOutcome outcome =
      conjugate_is_b_channel(luders(a()), c, solver_options(g_));
  const bool ok = valid && marginal_gap <= kMarginalTol && !outcome.feasible() &&
                  floor_of(outcome) >= kFloorBound;
  io::Json residuals = io::outcome_to_json(outcome, false);
  residuals["C_valid"] = valid;
  residuals["marginal_gap"] = marginal_gap;
  add({"luders-not-universal", "conjugate_is_b_channel(luders(A_0.8), C(0.8))", g_.tol,
       pass_if(ok), residuals, "", watch.seconds()});
}

const std::vector<UniversalCase>& Harness::universal_cases() {
  if (cases_) return *cases_;
  cases_.emplace();
  const Povm c = observable_C(kS);
  cases_->push_back({"C(0.8)", c, refinement_joint(a(), c), {}, false});
  const Povm b06 = qubit_binary(0.6, xz_axis(kPi / 2.0));
  cases_->push_back({"B(0.6,pi/2)", b06, orthogonal_joint_observable(kS, 0.6), {}, false});

  SolverOptions tight = solver_options(g_);
  tight.tol = construction_tol(g_);
  std::mt19937 rng(g_.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (cases_->size() < 7) {
    const double t = 0.05 + 0.95 * unit(rng);
    const double theta = kPi / 2.0 * unit(rng);
    if (busch_margin(kS, t, theta) < kBoundaryGap) continue;
    const Povm b = qubit_binary(t, xz_axis(theta));
    JointSearch search = find_joint_observable(a(), b, tight);
    tally_.record(a(), b, search, tight.tol);
    cases_->push_back({"B(" + std::to_string(t) + "," + std::to_string(theta) + ")", b,
                       search.joint, search.outcome, true});
  }
  return *cases_;
}

void Harness::universal_property() {
  Stopwatch watch;
  const KrausChannel lambda = universal_channel(a());
  io::write_json(out_ / "lambda_A.json", io::channel_to_json(lambda));
  double worst = 0.0;
  bool all_found = true;
  io::Json rows = io::Json::array();
  std::size_t index = 0;
  for (const UniversalCase& uc : universal_cases()) {
    if (!uc.joint) {
      all_found = false;
      rows.push_back({{"case", uc.name},
                      {"search", io::outcome_to_json(uc.search, false)}});
      continue;
    }
    const Povm b_prime = modified_observable(a(), *uc.joint);
    const double residual = sequential_residual(lambda, b_prime, uc.b);
    worst = std::max(worst, residual);
    io::write_json(out_ / ("B_prime_" + std::to_string(index++) + ".json"),
                   io::povm_to_json(b_prime));
    rows.push_back({{"case", uc.name}, {"residual", residual}});
  }
  add({"universal-property", "sequential_residual(universal_channel(A_0.8), B', B)",
       g_.tol, pass_if(all_found && worst <= g_.tol),
       {{"max_residual", worst}, {"cases", rows}}, "", watch.seconds()});
}

void Harness::sharp_reduction() {
  Stopwatch watch;
  const Povm z = qubit_binary(1.0, xz_axis(0.0));
  const KrausChannel lambda = universal_channel(z);
  const NaimarkDilation minimal = naimark_minimal(z);
  const KrausChannel identified = pull_back_output(lambda, minimal.v);
  const double gap = frobenius_distance(choi(identified).matrix, choi(luders(z)).matrix);
  add({"sharp-reduction", "choi(universal_channel(Z)) vs choi(luders(Z))", kIdentityTol,
       pass_if(gap <= kIdentityTol), {{"choi_distance", gap}}, "", watch.seconds()});
}

void Harness::minimal_dimension() {
  Stopwatch watch;
  struct Case {
    std::string name;
    Povm p;
    std::size_t expected;
  };
  const std::vector<Case> cases{{"A_0.8", a(), 4},
                                {"C(0.8)", observable_C(kS), 5},
                                {"sharp z", qubit_binary(1.0, xz_axis(0.0)), 2}};
  bool ok = true;
  io::Json rows = io::Json::array();
  for (const Case& c : cases) {
    const NaimarkDilation d = naimark_minimal(c.p);
    const bool verified = verify_dilation(c.p, d, kDilationTol);
    const bool minimal = is_minimal(d, kDilationTol);
    ok = ok && d.dim_k == c.expected && verified && minimal;
    rows.push_back({{"observable", c.name}, {"dim_k", d.dim_k}, {"expected", c.expected},
                    {"verified", verified}, {"minimal", minimal}});
  }
  add({"minimal-dimension", "naimark_minimal", kDilationTol, pass_if(ok), {{"cases", rows}},
       "", watch.seconds()});
}

void Harness::triplet() {
  Stopwatch watch;
  const SolverOptions opts = solver_options(g_);
  const auto high = noisy_spin_triplet(0.65);
  bool pairs_ok = true;
  io::Json pairs = io::Json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      const JointSearch s = find_joint_observable(high[i], high[j], opts);
      pairs_ok = pairs_ok && s.outcome.feasible() && s.outcome.residual <= opts.tol;
      pairs.push_back(io::outcome_to_json(s.outcome, false));
    }
  }
  const JointSearch three_high = find_joint_observable(high, opts);
  const auto low = noisy_spin_triplet(0.55);
  const JointSearch three_low = find_joint_observable(low, opts);
  const bool ok = pairs_ok && !three_high.outcome.feasible() &&
                  floor_of(three_high.outcome) >= kFloorBound &&
                  three_low.outcome.feasible();
  Check check{"triplet", "find_joint_observable (pairs and triple)", g_.tol,
              ok ? CheckStatus::kPass : CheckStatus::kUndecided,
              {{"pairs_t_0.65", pairs},
               {"triple_t_0.65", io::outcome_to_json(three_high.outcome, false)},
               {"triple_t_0.55", io::outcome_to_json(three_low.outcome, false)}},
              "heuristic; not gating", watch.seconds()};
  check.gating = false;
  add(std::move(check));
}

ComplexMatrix gaussian(std::mt19937& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double re = n(rng);
      const double im = n(rng);
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

KrausChannel random_channel(std::mt19937& rng, std::size_t d_in, std::size_t d_out,
                            std::size_t count) {
  count = std::max(count, (d_in + d_out - 1) / d_out);
  const auto rows = static_cast<Eigen::Index>(d_out * count);
  const auto cols = static_cast<Eigen::Index>(d_in);
  const Eigen::HouseholderQR<ComplexMatrix> qr(gaussian(rng, rows, rows));
  const ComplexMatrix v = ComplexMatrix(qr.householderQ()).leftCols(cols);
  std::vector<ComplexMatrix> kraus;
  for (std::size_t k = 0; k < count; ++k) {
    kraus.push_back(v.middleRows(static_cast<Eigen::Index>(k * d_out),
                                 static_cast<Eigen::Index>(d_out)));
  }
  return KrausChannel(d_in, d_out, std::move(kraus));
}

void Harness::duality() {
  Stopwatch watch;
  std::mt19937 rng(g_.seed + 1);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d_in = dim(rng);
    const std::size_t d_out = dim(rng);
    const KrausChannel c = random_channel(rng, d_in, d_out, dim(rng));
    const ComplexMatrix g = gaussian(rng, static_cast<Eigen::Index>(d_in),
                                     static_cast<Eigen::Index>(d_in));
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace();
    const ComplexMatrix h = gaussian(rng, static_cast<Eigen::Index>(d_out),
                                     static_cast<Eigen::Index>(d_out));
    ComplexMatrix effect = h * h.adjoint();
    effect /= effect.norm();
    const Complex lhs = (qseq::apply(c, rho) * effect).trace();
    const Complex rhs = (rho * heisenberg_apply(c, effect)).trace();
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  add({"duality", "apply vs heisenberg_apply on 100 random triples", kIdentityTol,
       pass_if(worst <= kIdentityTol), {{"max_error", worst}}, "", watch.seconds()});
}

void Harness::auxiliary_formula() {
  Stopwatch watch;
  double worst = 0.0;
  std::size_t pairs = 0;
  for (const UniversalCase& uc : universal_cases()) {
    if (!uc.joint) continue;
    const CompensationData data = compensation_data(a(), *uc.joint);
    worst = std::max(worst, auxiliary_formula_residual(data, *uc.joint));
    ++pairs;
  }
  add({"auxiliary-formula", "auxiliary_formula_residual", kProofTol,
       pass_if(pairs == universal_cases().size() && worst <= kProofTol),
       {{"max_residual", worst}, {"dilation_pairs", pairs}}, "", watch.seconds()});
}

void Harness::factorization() {
  Stopwatch watch;
  double worst = 0.0;
  std::size_t count = 0;
  for (const UniversalCase& uc : universal_cases()) {
    if (!uc.joint) continue;
    worst = std::max(worst, factorization_residual(a(), *uc.joint));
    ++count;
  }
  add({"factorization", "factorization_residual on a state basis", kProofTol,
       pass_if(count == universal_cases().size() && worst <= kProofTol),
       {{"max_residual", worst}, {"cases", count}}, "", watch.seconds()});
}

void Harness::witness_revalidation() {
  Stopwatch watch;
  grid();
  universal_cases();
  add({"witness-revalidation", "marginals of every solver witness", g_.tol,
       pass_if(tally_.failed == 0 && tally_.checked > 0),
       {{"witnesses", tally_.checked}, {"failures", tally_.failed}}, "", watch.seconds()});
}

}  // namespace

const std::vector<std::string>& reproduction_check_names() {
  static const std::vector<std::string> names{
      "busch-grid",       "luders-binary",     "luders-not-universal",
      "universal-property", "sharp-reduction", "minimal-dimension",
      "triplet",          "duality",           "auxiliary-formula",
      "factorization",    "witness-revalidation"};
  return names;
}

void cmd_reproduce(const fs::path& out_dir, const GlobalOptions& g, Report& report) {
  const auto& names = reproduction_check_names();
  if (!g.only.empty() && std::find(names.begin(), names.end(), g.only) == names.end()) {
    throw InvalidArgument("--only: unknown check \"" + g.only + "\"");
  }
  fs::create_directories(out_dir);
  Harness h(out_dir, g, report);
  const std::vector<std::pair<std::string, std::function<void()>>> steps{
      {"busch-grid", [&] { h.busch_grid(); }},
      {"luders-binary", [&] { h.luders_binary(); }},
      {"luders-not-universal", [&] { h.luders_not_universal(); }},
      {"universal-property", [&] { h.universal_property(); }},
      {"sharp-reduction", [&] { h.sharp_reduction(); }},
      {"minimal-dimension", [&] { h.minimal_dimension(); }},
      {"triplet", [&] { h.triplet(); }},
      {"duality", [&] { h.duality(); }},
      {"auxiliary-formula", [&] { h.auxiliary_formula(); }},
      {"factorization", [&] { h.factorization(); }},
      {"witness-revalidation", [&] { h.witness_revalidation(); }},
  };
  for (const auto& [name, run] : steps) {
    if (g.only.empty() || g.only == name) run();
  }
}

}  // namespace qseq::cli
