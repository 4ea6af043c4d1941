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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "steercert/guessing.hpp"
#include "steercert/steering.hpp"

namespace steercert {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationOptions {
  std::uint64_t seed = 0;
  int uniqueness_trials = 20;
  GuessingOptions guessing;
};

// Two ensembles of one random full-rank density operator:
// rho = sum_a weights_a |set_a><set_a| = sum_i weights_b |set_b><set_b|.
struct EnsemblePair {
  std::vector<Ket> set_a;
  std::vector<Ket> set_b;
  std::vector<double> weights_a;
  std::vector<double> weights_b;
};

EnsemblePair random_ensemble_pair(int d, std::mt19937_64& rng);

// Built-in battery for one (d, lambda): maximal value of the constructed
// assemblage, classical bound closed form, Fact-1 style uniqueness on random
// ensembles, and agreement of the conic value with the analytic guessing
// probability at the maximal value.
std::vector<CheckResult> run_verification(const SchmidtSpec& spec,
                                          const VerificationOptions& options = {});

}  // namespace steercert
