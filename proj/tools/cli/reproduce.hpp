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


#ifndef QSEQ_TOOLS_REPRODUCE_HPP_
#define QSEQ_TOOLS_REPRODUCE_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "cli/report.hpp"

namespace qseq::cli {

/// Names accepted by --only, in report order.
const std::vector<std::string>& reproduction_check_names();

/// Runs the qubit reproduction suite (all checks, or only g.only) and writes
/// per-case artifacts under out_dir. Throws InvalidArgument for an unknown
/// --only name.
void cmd_reproduce(const std::filesystem::path& out_dir, const GlobalOptions& g,
                   Report& report);

}  // namespace qseq::cli

#endif  // QSEQ_TOOLS_REPRODUCE_HPP_
