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

// Adversarial guessing probability of the untrusted outcome for input x*,
// given only the observed steering-functional value, and the min-entropy it
// certifies.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "steercert/conic.hpp"
#include "steercert/solver.hpp"
#include "steercert/steering.hpp"

namespace steercert {

enum class BetaConstraint {
  kEquality,  // functional value == beta_obs
  kAtLeast,   // functional value >= beta_obs
};

struct GuessingOptions {
  SolverOptions solver;
  BetaConstraint constraint = BetaConstraint::kEquality;
  // Distance below the maximal value at which the analytic guessing
  // probability is also evaluated.
  double eps_max = 1e-6;
  // Known maximal functional value; computed when absent.
  std::optional<double> beta_max;
  // Solve the real-symmetric embedding instead of the complex program.
  bool real_embedding = false;
  bool keep_attack = true;
};

// Eve's subnormalized assemblages s^e_a|x, e = 0..d-1.
class EveAttack {
 public:
  EveAttack(Scenario scenario, std::vector<Operator> elements);

  const Scenario& scenario() const { return scenario_; }
  int num_guesses() const { return scenario_.n_outcomes; }
  const Operator& at(int e, int a, int x) const;
  // sum_e s^e_a|x, the assemblage the honest parties observe.
  Assemblage average() const;

 private:
  Scenario scenario_;
  std::vector<Operator> elements_;
};

struct GuessingProgram {
  ConicProgram program;
  Scenario scenario;
  int x_star = 0;
  double beta_obs = 0.0;
  BetaConstraint constraint = BetaConstraint::kEquality;
  std::optional<int> slack_block;

  // Block index of s^e_a|x.
  int block(int e, int a, int x) const {
    return (e * scenario.n_inputs + x) * scenario.n_outcomes + a;
  }
  int num_matrix_equalities() const { return scenario.n_outcomes * (scenario.n_inputs - 1); }
};

// Largest value of the functional over normalized no-signalling assemblages.
// Rank-1 two-input functionals with a nonnegative common decomposition reach
// exactly 2; anything else is solved as a small conic program (returns the
// certified upper bound).
double quantum_maximum(const SteeringFunctional& functional, const SolverOptions& options = {});

// Throws kBetaOutOfRange when beta_obs exceeds the maximal value by more than
// the feasibility tolerance.
GuessingProgram build_guessing_program(const SteeringFunctional& functional, double beta_obs,
                                       int x_star, const GuessingOptions& options = {});

struct GuessingCertificate {
  int d = 0;
  double beta_obs = 0.0;
  int x_star = 0;
  double p_guess_primal = 0.0;  // value of the attack found
  double p_guess_dual = 1.0;    // certified upper bound
  double h_min_bits = 0.0;      // -log2(p_guess_dual)
  SolverReport report;
  std::optional<EveAttack> attack;
  std::optional<double> analytic_p_guess;
  std::optional<double> analytic_discrepancy;  // p_guess_dual - analytic
  std::string error;  // set when the point could not be evaluated
};

GuessingCertificate guessing_probability(const SteeringFunctional& functional, double beta_obs,
                                         int x_star, const GuessingOptions& options = {});

// Independent check of an attack against the program constraints.
struct AttackAudit {
  double no_signalling = 0.0;
  double trace = 0.0;
  double beta = 0.0;
  double min_eigenvalue = 0.0;
  double guess_value = 0.0;  // sum_e tr s^e_e|x*
};

AttackAudit audit_attack(const EveAttack& attack, const SteeringFunctional& functional,
                         double beta_obs, int x_star,
                         BetaConstraint constraint = BetaConstraint::kEquality);

}  // namespace steercert
