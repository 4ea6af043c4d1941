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

#include "steercert/error.hpp"

namespace steercert {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kNotHermitian: return "NotHermitian";
    case ErrorKind::kRankDeficient: return "RankDeficient";
    case ErrorKind::kNotFullRank: return "NotFullRank";
    case ErrorKind::kVanishingCoefficient: return "VanishingCoefficient";
    case ErrorKind::kNoNonnegativeSolution: return "NoNonnegativeSolution";
    case ErrorKind::kNoCommonDecomposition: return "NoCommonDecomposition";
    case ErrorKind::kEnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorKind::kScenarioMismatch: return "ScenarioMismatch";
    case ErrorKind::kBetaOutOfRange: return "BetaOutOfRange";
    case ErrorKind::kInvalidProgram: return "InvalidProgram";
    case ErrorKind::kInvalidInput: return "InvalidInput";
    case ErrorKind::kParse: return "ParseError";
  }
  return "Unknown";
}

}  // namespace steercert
