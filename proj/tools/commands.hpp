// Copyright 2026 The branchsim Authors
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "branchsim/trees.hpp"

namespace branchsim::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
  kExitNumeric = 3,
};

// Runs the command line `args` (without the program name) and returns the
// process exit code. Results go to `out`, diagnostics and the run manifest
// to `err` unless --manifest names a file.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  bool quick = false;
  std::uint64_t seed = 1;
  ClosedForm closed_form = mvb_closed_form;
};

// The verification bundle behind `verify all`.
std::vector<CheckResult> VerifyAll(const VerifyOptions& options);

}  // namespace branchsim::cli
