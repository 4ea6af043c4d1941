// Copyright 2026 The steercert Authors
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
#pragma once
// Command-line front end. Subcommands: construct, value, lhs-bound, certify,
// sweep, verify.
#include <ostream>
#include <string>
#include <vector>

namespace steercert::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidInput = 2,
  kExitIo = 3,
  kExitSolverFailure = 4,
  kExitVerificationFailure = 5,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Comma-separated decimals or "maximal". Lists whose sum is within 1e-6 of 1
// are renormalized; anything else throws Error(kInvalidInput).
std::vector<double> parse_schmidt(const std::string& text, int d);

}  // namespace steercert::cli
