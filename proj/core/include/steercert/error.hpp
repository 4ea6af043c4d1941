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

#include <stdexcept>
#include <string>
#include <string_view>

namespace steercert {

enum class ErrorKind {
  kDimensionMismatch,
  kNotHermitian,
  kRankDeficient,
  kNotFullRank,
  kVanishingCoefficient,
  kNoNonnegativeSolution,
  kNoCommonDecomposition,
  kEnumerationTooLarge,
  kScenarioMismatch,
  kBetaOutOfRange,
  kInvalidProgram,
  kInvalidInput,
  kParse,
};

// Stable identifier, e.g. "BetaOutOfRange". Printed by the CLI.
std::string_view error_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace steercert
