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


#ifndef QSEQ_TOOLS_REPORT_HPP_
#define QSEQ_TOOLS_REPORT_HPP_

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "qseq/conic.hpp"
#include "qseq/io.hpp"

namespace qseq::cli {

enum class CheckStatus { kPass, kFail, kUndecided };

std::string_view to_string(CheckStatus status);
CheckStatus from_feasibility(FeasibilityStatus status);

struct Check {
  std::string name;
  std::string operation;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::kUndecided;
  io::Json residuals = io::Json::object();
  std::string message;
  double seconds = 0.0;
  // Non-gating checks are reported but ignored by exit_code().
  bool gating = true;
};

class Report {
 public:
  explicit Report(std::vector<std::string> command);

  void add(Check check);
  /// Records the sha256 of an input file under its path as given.
  void add_input(const std::filesystem::path& path);

  const std::vector<Check>& checks() const { return checks_; }

  /// 1 if a gating check failed, else 3 if one is undecided, else 0.
  int exit_code() const;
  io::Json to_json() const;

 private:
  std::vector<std::string> command_;
  std::vector<Check> checks_;
  io::Json inputs_ = io::Json::object();
};

/// Hex sha256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace qseq::cli

#endif  // QSEQ_TOOLS_REPORT_HPP_
