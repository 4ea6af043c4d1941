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

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "steercert/conic.hpp"

namespace steercert {

enum class SolveStatus { kOptimal, kNearOptimal, kInfeasible, kUnbounded, kNumericalFailure };

std::string_view status_name(SolveStatus status);

struct SolverOptions {
  double gap_tol = 1e-7;
  double feas_tol = 1e-7;
  int max_iterations = 150;
  // Fraction of the distance to the cone boundary taken per step.
  double step_fraction = 0.98;
  // Acceptance multiplier for kNearOptimal.
  double near_factor = 100.0;
  // Known bound on sum_k tr X_k over the feasible set, 0 if unknown. When set,
  // dual_value is the certified bound b'y + max(0, -lambda_min(A*(y) - C)) * trace_bound.
  double trace_bound = 0.0;
  bool verbose = false;
};

struct SolverReport {
  SolveStatus status = SolveStatus::kNumericalFailure;
  double primal_value = 0.0;  // <C, X>
  double dual_value = 0.0;    // b'y, certified when trace_bound is set
  double gap = 0.0;           // dual_value - primal_value
  double primal_infeasibility = 0.0;  // ||b - A(X)|| / (1 + ||b||)
  double dual_infeasibility = 0.0;    // ||A*(y) - Z - C|| / (1 + ||C||)
  int iterations = 0;
  double wall_time = 0.0;  // seconds
};

struct SolveResult {
  SolverReport report;
  std::vector<Eigen::MatrixXcd> primal;      // X blocks
  Eigen::VectorXd multipliers;               // y
  std::vector<Eigen::MatrixXcd> dual_slack;  // Z blocks
  // min_k lambda_min(A*(y) - C)_k. Nonnegative means y is exactly dual
  // feasible; otherwise it bounds the correction to b'y.
  double dual_constraint_min_eig = 0.0;
  // Filled for kInfeasible / kUnbounded.
  std::string ray_summary;
};

// Infeasible primal-dual path following (HKM direction, Mehrotra
// predictor-corrector). The primal and dual iterates are selected separately:
// the latest primal iterate of least infeasibility, and the dual iterate with
// the smallest bound. Never throws on numerical trouble; the status says
// what happened and the best iterate seen is returned.
SolveResult solve(const ConicProgram& program, const SolverOptions& options = {});

}  // namespace steercert
