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

#include "cli/report.hpp"

#include <array>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include <openssl/evp.h>

#include "qseq/version.hpp"

namespace qseq::cli {

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass:
      return "pass";
    case CheckStatus::kFail:
      return "fail";
    case CheckStatus::kUndecided:
      return "undecided";
  }
  return "undecided";
}

CheckStatus from_feasibility(FeasibilityStatus status) {
  switch (status) {
    case FeasibilityStatus::kFeasible:
      return CheckStatus::kPass;
    case FeasibilityStatus::kInfeasible:
      return CheckStatus::kFail;
    case FeasibilityStatus::kUndecided:
      return CheckStatus::kUndecided;
  }
  return CheckStatus::kUndecided;
}

Report::Report(std::vector<std::string> command) : command_(std::move(command)) {}

void Report::add(Check check) { checks_.push_back(std::move(check)); }

void Report::add_input(const std::filesystem::path& path) {
  inputs_[path.string()] = sha256_file(path);
}

int Report::exit_code() const {
  bool undecided = false;
  for (const Check& c : checks_) {
    if (!c.gating) continue;
    if (c.status == CheckStatus::kFail) return 1;
    if (c.status == CheckStatus::kUndecided) undecided = true;
  }
  return undecided ? 3 : 0;
}

io::Json Report::to_json() const {
  io::Json checks = io::Json::array();
  for (const Check& c : checks_) {
    io::Json j = {{"name", c.name},
                  {"operation", c.operation},
                  {"tolerance", c.tolerance},
                  {"status", std::string(to_string(c.status))},
                  {"residuals", c.residuals},
                  {"seconds", c.seconds},
                  {"gating", c.gating}};
    if (!c.message.empty()) j["message"] = c.message;
    checks.push_back(std::move(j));
  }
  return {{"tool", "qseq"},
          {"version", std::string(kVersion)},
          {"command", command_},
          {"inputs", inputs_},
          {"checks", std::move(checks)},
          {"exit_code", exit_code()}};
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error("sha256: digest initialisation failed");
  }
  std::array<char, 1 << 14> buffer{};
  while (in) {
    in.read(buffer.data(), buffer.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buffer.data(), in.gcount());
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &length);
  std::ostringstream hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return hex.str();
}

}  // namespace qseq::cli
