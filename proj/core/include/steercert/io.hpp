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

// JSON forms.
//
// Kets and operators: {"dim": d, "entries": [[re, im], ...]}, row-major for
// operators (d*d entries), d entries for kets.
//
// Families indexed by (a, x):
//   {"scenario": {"n": n, "d": d, "dimB": d},
//    "elements": {"<a>|<x>": <operator>, ...}}
// Functionals built from kets also carry "basis_kets": {"<a>|<x>": <ket>}.
//
// Readers throw Error(kParse) on malformed input and reject NaN/Inf.

#include <string>
#include <string_view>

#include "steercert/qmat.hpp"
#include "steercert/steering.hpp"

namespace steercert {

std::string to_json(const Ket& ket);
std::string to_json(const Operator& op);
std::string to_json(const MeasurementSet& meas);
std::string to_json(const Assemblage& assemblage);
std::string to_json(const SteeringFunctional& functional);

Ket ket_from_json(std::string_view text);
Operator operator_from_json(std::string_view text);
MeasurementSet measurements_from_json(std::string_view text);
Assemblage assemblage_from_json(std::string_view text);
SteeringFunctional functional_from_json(std::string_view text);

}  // namespace steercert
