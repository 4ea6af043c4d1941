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

// Steering scenarios: assemblages, steering functionals and their classical
// bounds, unique ensemble decompositions, and the Schmidt-state/Fourier
// construction that reaches the maximal functional value.

#include <optional>
#include <span>
#include <vector>

#include "steercert/qmat.hpp"

namespace steercert {

struct Scenario {
  int n_inputs = 2;
  int n_outcomes = 2;  // d
  int dim_b = 2;

  // Throws kInvalidInput unless every field is >= 1.
  void validate() const;
  int size() const { return n_inputs * n_outcomes; }
  // Storage index of element (a, x).
  int index(int a, int x) const { return x * n_outcomes + a; }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// n x d family {M_a|x} of measurement operators acting on C^dim_a.
class MeasurementSet {
 public:
  // Throws unless there are n*d square operators of a common dimension.
  MeasurementSet(Scenario scenario, std::vector<Operator> elements);

  const Scenario& scenario() const { return scenario_; }
  int dim_a() const { return elements_.front().dim(); }
  const Operator& at(int a, int x) const { return elements_.at(scenario_.index(a, x)); }
  std::span<const Operator> elements() const { return elements_; }

  // max_x || sum_a M_a|x - I ||_max
  double completeness_defect() const;
  bool is_valid(double completeness_tol = 1e-10, double psd_tol = tol::kPsd) const;

 private:
  Scenario scenario_;
  std::vector<Operator> elements_;
};

struct AssemblageResiduals {
  double no_signalling = 0.0;   // max_{x,x'} || sum_a s_a|x - sum_a s_a|x' ||_max
  double normalization = 0.0;   // | tr sum_a s_a|0 - 1 |
  double min_eigenvalue = 0.0;  // over all elements
  double hermiticity = 0.0;
};

// n x d family of subnormalized conditional states {s_a|x} on C^dim_b.
class Assemblage {
 public:
  Assemblage(Scenario scenario, std::vector<Operator> elements);

  const Scenario& scenario() const { return scenario_; }
  const Operator& at(int a, int x) const { return elements_.at(scenario_.index(a, x)); }
  std::span<const Operator> elements() const { return elements_; }

  // p(a|x) = tr s_a|x
  double probability(int a, int x) const;
  // rho_a|x = s_a|x / p(a|x); throws when p(a|x) == 0.
  Operator conditional_state(int a, int x) const;
  // sum_a s_a|x
  Operator marginal(int x) const;

  AssemblageResiduals residuals() const;
  bool is_valid(double tol = 1e-9) const;

 private:
  Scenario scenario_;
  std::vector<Operator> elements_;
};

// n x d family of Hermitian witnesses {F_a|x}. When built from kets the
// elements are the rank-1 projectors |phi_a|x><phi_a|x|.
class SteeringFunctional {
 public:
  SteeringFunctional(Scenario scenario, std::vector<Operator> elements);
  // basis[x][a] = |phi_a|x>; each slice must be d linearly independent kets.
  static SteeringFunctional from_kets(std::vector<std::vector<Ket>> basis);

  const Scenario& scenario() const { return scenario_; }
  const Operator& at(int a, int x) const { return elements_.at(scenario_.index(a, x)); }
  std::span<const Operator> elements() const { return elements_; }

  bool is_rank_one() const { return basis_kets_.has_value(); }
  // Throws kInvalidInput for functionals without basis kets.
  std::span<const Ket> kets(int x) const;

 private:
  Scenario scenario_;
  std::vector<Operator> elements_;
  std::optional<std::vector<std::vector<Ket>>> basis_kets_;
};

class SchmidtSpec {
 public:
  static constexpr double kDefaultFloor = 1e-6;

  // Throws kInvalidInput when the coefficients do not sum to 1 within 1e-12
  // and kNotFullRank when any coefficient is below floor.
  explicit SchmidtSpec(std::vector<double> lambdas, double floor = kDefaultFloor);
  static SchmidtSpec maximal(int d);

  int dim() const { return static_cast<int>(lambdas_.size()); }
  std::span<const double> lambdas() const { return lambdas_; }
  double max_lambda() const;

 private:
  std::vector<double> lambdas_;
};

// sum_i sqrt(lambda_i) |i>|i>
Ket schmidt_state(const SchmidtSpec& spec);

// Unitary discrete Fourier transform, entry (j, k) = exp(2 pi i jk/d)/sqrt(d).
Operator fourier(int d);

// M_a|0 = |a><a|, M_a|1 = F|a><a|F^dagger.
MeasurementSet canonical_measurements(int d);

// s_a|x = tr_A[(M_a|x (x) I) |state><state|].
Assemblage assemblage_from(const Ket& state, const MeasurementSet& meas);

// Unit kets proportional to sum_i sqrt(lambda_i) <a|F^dagger|i> |i>.
std::vector<Ket> chi_states(const SchmidtSpec& spec);

// F_a|0 = |a><a|, F_a|1 = |chi_a><chi_a|.
SteeringFunctional maximal_violation_functional(const SchmidtSpec& spec);

// sum_{a,x} tr F_a|x s_a|x
double steering_value(const SteeringFunctional& functional, const Assemblage& assemblage);

struct LhsOptimum {
  double value = 0.0;
  std::vector<int> strategy;  // strategy[x] = a(x)
  Ket state = Ket::basis(1, 0);  // top eigenvector of sum_x F_a(x)|x
};

inline constexpr long long kMaxLhsStrategies = 1'000'000;

// Maximum over deterministic assignments x -> a(x) of the top eigenvalue of
// sum_x F_a(x)|x. Throws kEnumerationTooLarge when d^n > kMaxLhsStrategies.
LhsOptimum lhs_optimum(const SteeringFunctional& functional);
double lhs_bound(const SteeringFunctional& functional);

struct UniqueDistributions {
  std::vector<double> q;    // weights on the first set
  std::vector<double> lam;  // weights on the second set
  Eigen::MatrixXcd expansion_u;  // (i, a): |phi_a> = sum_i u(i, a) |lambda_i>
  Eigen::MatrixXcd expansion_v;  // (a, i): |lambda_i> = sum_a v(a, i) |phi_a>
  // Spread of the ratio formula across the free index.
  double consistency_residual = 0.0;
  // || sum_a q_a |phi_a><phi_a| - sum_i lam_i |lambda_i><lambda_i| ||_max
  double ensemble_residual = 0.0;
  // max deviation from the vectorized linear-solve solution
  double oracle_residual = 0.0;
  bool nonnegative = true;
};

struct UniqueDistributionsOptions {
  double rank_tol = tol::kRank;
  double coeff_floor = 1e-8;
  // Relative singular-value threshold deciding that a common decomposition
  // exists and is unique.
  double null_tol = 1e-7;
};

// Unique weights with sum_a q_a |a-set_a><.| = sum_i lam_i |b-set_i><.|,
// normalized to sum q = 1. Throws kRankDeficient, kVanishingCoefficient, or
// kNoCommonDecomposition. Negative weights are reported through nonnegative.
UniqueDistributions unique_distributions(std::span<const Ket> set_a, std::span<const Ket> set_b,
                                         const UniqueDistributionsOptions& options = {});

// max_a q_a|x* for a rank-1 two-input functional: the exact guessing
// probability at the maximal value 2. Throws kNoNonnegativeSolution when the
// weights are not a probability distribution.
double analytic_pguess_at_max(const SteeringFunctional& functional, int x_star);

}  // namespace steercert
