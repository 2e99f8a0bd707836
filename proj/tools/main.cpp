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

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/reproduce.hpp"
#include "cli/report.hpp"
#include "qseq/io.hpp"
#include "qseq/version.hpp"

namespace {

constexpr int kInputError = 2;

void print_summary(const qseq::cli::Report& report) {
  for (const auto& c : report.checks()) {
    std::cout << to_string(c.status) << "  " << c.name << "  (" << c.operation
              << ", tol " << c.tolerance << ")";
    if (!c.gating) std::cout << " [not gating]";
    if (!c.message.empty()) std::cout << ": " << c.message;
    std::cout << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = qseq::cli;
  namespace fs = std::filesystem;

  CLI::App app{"Sequential measurement toolkit: joint measurability, universal channels, "
               "conjugate-channel tests"};
  app.set_version_flag("--version", std::string(qseq::kVersion));
  app.require_subcommand(1);
  // Global flags may follow the subcommand and its arguments.
  app.fallthrough();

  cli::GlobalOptions g;
  std::string json_out;
  std::string config;
  app.add_option("--tol", g.tol, "Feasibility / equality tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-iters", g.max_iters, "Solver iteration cap")
      ->check(CLI::PositiveNumber);
  app.add_option("--json-out", json_out, "Write the JSON report to this path");
  app.add_option("--only", g.only, "reproduce-paper: run only this check");
  app.add_option("--seed", g.seed, "Seed for randomized checks");
  app.add_option("--config", config, "JSON config with feas.tol / feas.max_iters")
      ->check(CLI::ExistingFile);

  std::string a_path, b_path, channel_path, input_path;
  std::string out_dir = ".";
  bool exact_qubit = false;
  bool canonical = false;

  auto* validate = app.add_subcommand("validate", "Check a POVM or channel file");
  validate->add_option("input", input_path, "POVM or channel JSON")->required();

  auto* joint = app.add_subcommand("joint", "Decide joint measurability of two POVMs");
  joint->add_option("a", a_path, "First POVM")->required();
  joint->add_option("b", b_path, "Second POVM")->required();
  joint->add_flag("--exact-qubit", exact_qubit,
                  "Use the closed-form criterion for unbiased qubit binaries");
  joint->add_option("--out-dir", out_dir, "Where the witness is written");

  auto* universal = app.add_subcommand("universal", "Build the universal A-channel");
  universal->add_option("a", a_path, "POVM A")->required();
  universal->add_option("b", b_path, "Optional POVM B to implement after the channel");
  universal->add_option("--out-dir", out_dir, "Where artifacts are written");

  auto* conjugate = app.add_subcommand("conjugate-test",
                                       "Test whether the conjugate channel is a B-channel");
  conjugate->add_option("channel", channel_path, "Channel JSON")->required();
  conjugate->add_option("b", b_path, "POVM B")->required();
  conjugate->add_option("--out-dir", out_dir, "Where B' is written");

  auto* nondisturb = app.add_subcommand("nondisturb", "Check channel^*(B(y)) == B(y)");
  nondisturb->add_option("channel", channel_path, "Channel JSON")->required();
  nondisturb->add_option("b", b_path, "POVM B")->required();

  auto* dilate = app.add_subcommand("dilate", "Naimark dilation of a POVM");
  dilate->add_option("a", a_path, "POVM A")->required();
  dilate->add_flag("--canonical", canonical, "Canonical instead of minimal dilation");
  dilate->add_option("--out-dir", out_dir, "Where the dilation is written");

  auto* reproduce = app.add_subcommand("reproduce-paper", "Run the qubit reproduction suite");
  reproduce->add_option("--out-dir", out_dir, "Where the report and artifacts go");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  cli::Report report(std::vector<std::string>(argv, argv + argc));
  try {
    if (!config.empty()) {
      // Flags given on the command line take precedence over the file.
      const cli::GlobalOptions flags = g;
      cli::load_config(config, g);
      if (app.count("--tol") > 0) g.tol = flags.tol;
      if (app.count("--max-iters") > 0) g.max_iters = flags.max_iters;
    }
    if (*validate) {
      cli::cmd_validate(input_path, g, report);
    } else if (*joint) {
      cli::cmd_joint(a_path, b_path, exact_qubit, out_dir, g, report);
    } else if (*universal) {
      std::optional<fs::path> b;
      if (!b_path.empty()) b = b_path;
      cli::cmd_universal(a_path, b, out_dir, g, report);
    } else if (*conjugate) {
      cli::cmd_conjugate_test(channel_path, b_path, out_dir, g, report);
    } else if (*nondisturb) {
      cli::cmd_nondisturb(channel_path, b_path, g, report);
    } else if (*dilate) {
      cli::cmd_dilate(a_path, canonical, out_dir, g, report);
    } else if (*reproduce) {
      cli::cmd_reproduce(out_dir, g, report);
      qseq::io::write_json(fs::path(out_dir) / "report.json", report.to_json());
    }
  } catch (const qseq::io::SchemaError& e) {
    std::cerr << "schema error at " << (e.pointer().empty() ? "<root>" : e.pointer())
              << ": " << e.what() << '\n';
    return kInputError;
  } catch (const qseq::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }

  print_summary(report);
  if (!json_out.empty()) qseq::io::write_json(json_out, report.to_json());
  return report.exit_code();
}
