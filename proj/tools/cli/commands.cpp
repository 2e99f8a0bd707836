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

#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>

#include "qseq/channel.hpp"
#include "qseq/dilation.hpp"
#include "qseq/feasibility.hpp"
#include "qseq/io.hpp"
#include "qseq/universal.hpp"

namespace qseq::cli {
namespace fs = std::filesystem;

namespace {

Povm read_povm(const fs::path& path, Report& report) {
  report.add_input(path);
  return io::povm_from_json(io::read_json(path));
}

KrausChannel read_channel(const fs::path& path, Report& report) {
  report.add_input(path);
  return io::channel_from_json(io::read_json(path));
}

void require_valid(const Povm& p, const fs::path& path, double tol) {
  const auto issues = validation_issues(p, tol);
  if (!issues.empty()) {
    throw InvalidArgument(path.string() + ": invalid POVM: " + issues.front());
  }
}

CheckStatus pass_if(bool ok) { return ok ? CheckStatus::kPass : CheckStatus::kFail; }

io::Json outcome_residuals(const FeasibilityOutcome& o) {
  return io::outcome_to_json(o, /*with_witness=*/false);
}

double effect_sum_error(const Povm& p) {
  return frobenius_distance(sum(p.effects()), identity(p.dim()));
}

double min_effect_eigenvalue(const Povm& p) {
  double lowest = 1.0;
  for (const ComplexMatrix& e : p.effects()) lowest = std::min(lowest, min_eigenvalue(e));
  return lowest;
}

double nondisturbance_residual(const KrausChannel& c, const Povm& b) {
  double worst = 0.0;
  for (const ComplexMatrix& e : b.effects()) {
    worst = std::max(worst, frobenius_distance(heisenberg_apply(c, e), e));
  }
  return worst;
}

double branch_residual(const KrausChannel& c, const Povm& a) {
  double worst = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    worst = std::max(worst, frobenius_distance(
                                heisenberg_branch(c, a.label(x), identity(c.dim_out())),
                                a.effect(x)));
  }
  return worst;
}

}  // namespace

void load_config(const fs::path& path, GlobalOptions& options) {
  const io::Json j = io::read_json(path);
  if (!j.is_object()) throw io::SchemaError("", "config must be an object");
  auto lookup = [&j](const char* flat, const char* nested) -> const io::Json* {
    if (j.contains(flat)) return &j[flat];
    if (j.contains("feas") && j["feas"].is_object() && j["feas"].contains(nested)) {
      return &j["feas"][nested];
    }
    return nullptr;
  };
  if (const io::Json* tol = lookup("feas.tol", "tol")) {
    if (!tol->is_number() || tol->get<double>() <= 0.0) {
      throw io::SchemaError("/feas.tol", "expected a positive number");
    }
    options.tol = tol->get<double>();
  }
  if (const io::Json* iters = lookup("feas.max_iters", "max_iters")) {
    if (!iters->is_number_integer() || iters->get<long long>() <= 0) {
      throw io::SchemaError("/feas.max_iters", "expected a positive integer");
    }
    options.max_iters = iters->get<std::size_t>();
  }
}

SolverOptions solver_options(const GlobalOptions& options) {
  SolverOptions s;
  s.tol = options.tol;
  s.max_iters = options.max_iters;
  return s;
}

double construction_tol(const GlobalOptions& options) { return options.tol * 1e-4; }

void cmd_validate(const fs::path& input, const GlobalOptions& g, Report& report) {
  report.add_input(input);
  const io::Json doc = io::read_json(input);
  Stopwatch watch;
  if (io::is_channel_document(doc)) {
    const KrausChannel c = io::channel_from_json(doc);
    const double tp = trace_preservation_error(c);
    report.add({"trace-preservation", "trace_preservation_error", g.tol,
                pass_if(tp <= g.tol), {{"error", tp}}, "", watch.seconds()});
    Stopwatch choi_watch;
    const ChoiMatrix j = choi(c);
    const double lowest = min_eigenvalue(j.matrix);
    report.add({"choi", "validate_choi", g.tol, pass_if(validate_choi(j, g.tol)),
                {{"min_eigenvalue", lowest}}, "", choi_watch.seconds()});
    return;
  }
  const Povm p = io::povm_from_json(doc);
  const auto issues = validation_issues(p, g.tol);
  std::string message;
  for (const auto& issue : issues) message += (message.empty() ? "" : "; ") + issue;
  report.add({"povm", "validate", g.tol, pass_if(issues.empty()),
              {{"normalization_error", effect_sum_error(p)},
               {"min_eigenvalue", min_effect_eigenvalue(p)},
               {"outcomes", p.size()}},
              message, watch.seconds()});
}

void cmd_joint(const fs::path& a_path, const fs::path& b_path, bool exact_qubit,
               const fs::path& out_dir, const GlobalOptions& g, Report& report) {
  const Povm a = read_povm(a_path, report);
  const Povm b = read_povm(b_path, report);
  if (a.dim() != b.dim()) throw DimensionError("joint: observables act on different dimensions");
  require_valid(a, a_path, g.tol);
  require_valid(b, b_path, g.tol);

  Stopwatch watch;
  if (exact_qubit) {
    const auto qa = as_qubit_binary(a, g.tol);
    const auto qb = as_qubit_binary(b, g.tol);
    if (qa && qb) {
      double cosine = 0.0;
      for (std::size_t k = 0; k < 3; ++k) cosine += qa->axis[k] * qb->axis[k];
      const double theta = std::acos(std::min(1.0, std::abs(cosine)));
      const double margin = busch_margin(qa->t, qb->t, theta);
      report.add({"joint-measurability", "busch_criterion", Defaults::kBuschSlack,
                  pass_if(busch_criterion(qa->t, qb->t, theta)),
                  {{"s", qa->t}, {"t", qb->t}, {"theta", theta}, {"margin", margin}},
                  "", watch.seconds()});
      return;
    }
  }
  const JointSearch search = find_joint_observable(a, b, solver_options(g));
  Check check{"joint-measurability", "find_joint_observable", g.tol,
              from_feasibility(search.outcome.status), outcome_residuals(search.outcome),
              "", watch.seconds()};
  if (exact_qubit) check.message = "inputs are not unbiased qubit binaries; used the solver";
  if (search.joint) {
    const fs::path out = out_dir / "joint_witness.json";
    io::write_json(out, io::povm_to_json(*search.joint));
    check.residuals["witness_path"] = out.string();
  }
  report.add(std::move(check));
}

void cmd_universal(const fs::path& a_path, const std::optional<fs::path>& b_path,
                   const fs::path& out_dir, const GlobalOptions& g, Report& report) {
  const Povm a = read_povm(a_path, report);
  require_valid(a, a_path, g.tol);

  Stopwatch watch;
  const KrausChannel lambda = universal_channel(a);
  const double tp = trace_preservation_error(lambda);
  const double branches = branch_residual(lambda, a);
  io::write_json(out_dir / "lambda_A.json", io::channel_to_json(lambda));
  report.add({"universal-channel", "universal_channel", g.tol,
              pass_if(tp <= g.tol && branches <= g.tol),
              {{"dim_out", lambda.dim_out()},
               {"trace_preservation_error", tp},
               {"a_channel_residual", branches}},
              "", watch.seconds()});
  if (!b_path) return;

  const Povm b = read_povm(*b_path, report);
  if (b.dim() != a.dim()) throw DimensionError("universal: observables act on different dimensions");
  require_valid(b, *b_path, g.tol);

  Stopwatch joint_watch;
  SolverOptions tight = solver_options(g);
  tight.tol = construction_tol(g);
  const JointSearch search = find_joint_observable(a, b, tight);
  report.add({"joint-measurability", "find_joint_observable", tight.tol,
              from_feasibility(search.outcome.status), outcome_residuals(search.outcome),
              "", joint_watch.seconds()});
  if (!search.joint) return;

  Stopwatch seq_watch;
  const Povm b_prime = modified_observable(a, *search.joint, g.tol);
  const double residual = sequential_residual(lambda, b_prime, b);
  const double factorization = factorization_residual(a, *search.joint, g.tol);
  io::write_json(out_dir / "joint.json", io::povm_to_json(*search.joint));
  io::write_json(out_dir / "B_prime.json", io::povm_to_json(b_prime));
  io::write_json(out_dir / "scheme.json",
                 io::scheme_to_json(make_scheme(a, lambda, b_prime, g.tol)));
  report.add({"sequential", "verify_sequential", g.tol, pass_if(residual <= g.tol),
              {{"residual", residual}, {"factorization_residual", factorization}}, "",
              seq_watch.seconds()});
}

void cmd_conjugate_test(const fs::path& channel_path, const fs::path& b_path,
                        const fs::path& out_dir, const GlobalOptions& g, Report& report) {
  const KrausChannel c = read_channel(channel_path, report);
  const Povm b = read_povm(b_path, report);
  require_valid(b, b_path, g.tol);

  Stopwatch watch;
  const FeasibilityOutcome outcome = conjugate_is_b_channel(c, b, solver_options(g));
  report.add({"conjugate-b-channel", "conjugate_is_b_channel", g.tol,
              from_feasibility(outcome.status), outcome_residuals(outcome), "",
              watch.seconds()});
  if (!outcome.feasible()) return;

  Stopwatch recover_watch;
  try {
    const Povm b_prime = recover_b_prime(c, b, solver_options(g));
    const double residual = sequential_residual(c, b_prime, b);
    io::write_json(out_dir / "B_prime.json", io::povm_to_json(b_prime));
    report.add({"recover-b-prime", "recover_b_prime", g.tol, pass_if(residual <= g.tol),
                {{"sequential_residual", residual}}, "", recover_watch.seconds()});
  } catch (const ConvergenceError& e) {
    report.add({"recover-b-prime", "recover_b_prime", g.tol, CheckStatus::kUndecided,
                io::Json::object(), e.what(), recover_watch.seconds()});
  }
}

void cmd_nondisturb(const fs::path& channel_path, const fs::path& b_path,
                    const GlobalOptions& g, Report& report) {
  const KrausChannel c = read_channel(channel_path, report);
  const Povm b = read_povm(b_path, report);
  if (b.dim() != c.dim_out() || b.dim() != c.dim_in()) {
    throw DimensionError("nondisturb: B must act on both channel input and output");
  }
  Stopwatch watch;
  const double residual = nondisturbance_residual(c, b);
  report.add({"nondisturbance", "nondisturbing", g.tol, pass_if(nondisturbing(c, b, g.tol)),
              {{"residual", residual}}, "", watch.seconds()});
}

void cmd_dilate(const fs::path& a_path, bool canonical, const fs::path& out_dir,
                const GlobalOptions& g, Report& report) {
  const Povm a = read_povm(a_path, report);
  require_valid(a, a_path, g.tol);
  Stopwatch watch;
  const NaimarkDilation d = canonical ? naimark_canonical(a) : naimark_minimal(a);
  io::write_json(out_dir / "dilation.json", io::dilation_to_json(d));
  report.add({"dilation", canonical ? "naimark_canonical" : "naimark_minimal", g.tol,
              pass_if(verify_dilation(a, d, g.tol)),
              {{"dim_k", d.dim_k}, {"isometry_error", isometry_error(d.v)}}, "",
              watch.seconds()});
  Check minimality{"minimality", "is_minimal", Defaults::kRankTol,
                   pass_if(is_minimal(d)),
                   {{"rank", numerical_rank(spanning_set(d), Defaults::kRankTol)},
                    {"dim_k", d.dim_k}},
                   "", watch.seconds()};
  minimality.gating = !canonical;
  report.add(std::move(minimality));
}

}  // namespace qseq::cli
