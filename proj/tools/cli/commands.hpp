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


#ifndef QSEQ_TOOLS_COMMANDS_HPP_
#define QSEQ_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "cli/report.hpp"
#include "qseq/config.hpp"
#include "qseq/conic.hpp"

namespace qseq::cli {

struct GlobalOptions {
  double tol = Defaults::kFeasTol;
  std::size_t max_iters = Defaults::kMaxIters;
  std::optional<std::filesystem::path> json_out;
  std::string only;
  std::uint32_t seed = 2026;
};

/// Reads "feas.tol" and "feas.max_iters" from a JSON config, either as flat
/// dotted keys or nested under "feas".
void load_config(const std::filesystem::path& path, GlobalOptions& options);

SolverOptions solver_options(const GlobalOptions& options);

/// Tolerance of the joint-observable search feeding the universal
/// construction; tighter than g.tol so that B' inherits a small residual.
double construction_tol(const GlobalOptions& options);

void cmd_validate(const std::filesystem::path& input, const GlobalOptions& g,
                  Report& report);

void cmd_joint(const std::filesystem::path& a_path, const std::filesystem::path& b_path,
               bool exact_qubit, const std::filesystem::path& out_dir,
               const GlobalOptions& g, Report& report);

void cmd_universal(const std::filesystem::path& a_path,
                   const std::optional<std::filesystem::path>& b_path,
                   const std::filesystem::path& out_dir, const GlobalOptions& g,
                   Report& report);

void cmd_conjugate_test(const std::filesystem::path& channel_path,
                        const std::filesystem::path& b_path,
                        const std::filesystem::path& out_dir, const GlobalOptions& g,
                        Report& report);

void cmd_nondisturb(const std::filesystem::path& channel_path,
                    const std::filesystem::path& b_path, const GlobalOptions& g,
                    Report& report);

void cmd_dilate(const std::filesystem::path& a_path, bool canonical,
                const std::filesystem::path& out_dir, const GlobalOptions& g,
                Report& report);

}  // namespace qseq::cli

#endif  // QSEQ_TOOLS_COMMANDS_HPP_
